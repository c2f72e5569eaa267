//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while building, transforming or evaluating.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("side {0} is not paired with any other side")]
    UnpairedSide(String),
    #[error("side {0} is paired more than once")]
    DuplicateSide(String),
    #[error("triangle count {found} does not match 2(2g-2+n) = {expected}")]
    EulerMismatch { found: usize, expected: i64 },
    #[error("derived {found} ideal vertices but {expected} punctures were declared")]
    VertexCountMismatch { found: usize, expected: usize },
    #[error("the gluing does not produce a connected surface")]
    Disconnected,
    #[error("edge {0} has both sides in one triangle")]
    SelfGluedEdge(usize),
    #[error("assumption (I) fails: some edge lies twice in one triangle")]
    AssumptionIViolated,
    #[error("index {0} is out of range")]
    InvalidIndex(usize),
    #[error("degenerate flag configuration")]
    DegenerateConfiguration,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("base points of the cross ratio coincide")]
    CoincidentBasePoints,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("parameter must be strictly positive")]
    NonPositiveParameter,
    #[error("the two flags are not in general position")]
    DegeneratePair,
    #[error("inconsistent dual path: {0}")]
    InconsistentPath(String),
    #[error("matrix has zero determinant")]
    ZeroDeterminant,
    #[error("depth limit exceeded: {0}")]
    DepthLimitExceeded(String),
    #[error("a developed vertex left the affine patch z > 0")]
    PatchOverflow,
    #[error("conic fit needs at least 6 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
