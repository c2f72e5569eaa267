//! Fock–Goncharov coordinates for framed convex projective structures on
//! punctured surfaces.
//!
//! * [`surface`]: ideal triangulations as side pairings, flips, dual paths.
//! * [`flags`]: exact flag geometry and the ratio invariants.
//! * [`coords`]: coordinate vectors and coordinate changes.
//! * [`holonomy`]: monodromy of dual paths and classification of ends.
//! * [`develop`]: the developing map as a flag-triangle tessellation.
//! * [`poisson`]: the coordinate Poisson bracket and Goldman's bracket.

pub mod coords;
pub mod corpus;
pub mod develop;
pub mod dual;
pub mod error;
pub mod field;
pub mod flags;
pub mod holonomy;
pub mod io;
pub mod linalg;
pub mod mat3;
pub mod poisson;
pub mod surface;

pub use coords::CoordVector;
pub use error::{Error, Result};
pub use surface::{DualPath, IdealTriangulation};
