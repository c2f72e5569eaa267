//! Minimal scalar abstraction so the same formulas run over exact rationals,
//! floats and dual numbers.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A commutative field, as far as the formulas in this crate need one.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(n: i64) -> Self;
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Scalars with a real cube root; needed for SL(3) normalisation.
pub trait Real: Field {
    fn cbrt(&self) -> Self;
    fn from_f64(x: f64) -> Self;
    /// Value part, dropping any infinitesimal components.
    fn value(&self) -> f64;
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Real for f64 {
    fn cbrt(&self) -> Self {
        f64::cbrt(*self)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
}

/// Shorthand for the rational `p/q`.
pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn qi(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Lossy conversion of an exact rational to a float.
pub fn to_f64(x: &BigRational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // shift both parts down to keep the ratio representable
            let nb = x.numer().bits() as i64;
            let db = x.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if x.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Exact rational cube root when it exists.
pub fn rational_cbrt(x: &BigRational) -> Option<BigRational> {
    let n = x.numer().cbrt();
    let d = x.denom().cbrt();
    let r = BigRational::new(n, d);
    if &(r.clone() * r.clone() * r.clone()) == x {
        Some(r)
    } else {
        None
    }
}

/// `x` raised to a rational power, when the result is rational.
pub fn rational_pow(x: &BigRational, e: &BigRational) -> Option<BigRational> {
    use num::{Signed, ToPrimitive};
    if !x.is_positive() {
        return None;
    }
    let d = e.denom().to_u32()?;
    let n = e.numer().to_i32()?;
    let (a, b) = (x.numer().nth_root(d), x.denom().nth_root(d));
    let r = BigRational::new(a, b);
    if num::pow(r.clone(), d as usize) != *x {
        return None;
    }
    Some(if n >= 0 { num::pow(r, n as usize) } else { num::pow(r.recip(), n.unsigned_abs() as usize) })
}
