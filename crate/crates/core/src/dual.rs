//! Forward-mode dual numbers carrying a whole gradient.
//!
//! `Dual<S>` is generic over its scalar, so `Dual<Dual<f64>>` gives mixed
//! second derivatives, which is what nested brackets need.

use crate::field::{Field, Real};
use num::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A value together with its partial derivatives along `d.len()` directions.
///
/// An empty gradient stands for a constant, so constants can be built
/// without knowing how many directions are in play.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub v: S,
    pub d: Vec<S>,
}

impl<S: Field> Dual<S> {
    pub fn constant(v: S) -> Self {
        Dual { v, d: Vec::new() }
    }

    /// The `i`-th of `n` independent variables, with value `v`.
    pub fn variable(v: S, i: usize, n: usize) -> Self {
        let mut d = vec![S::zero(); n];
        d[i] = S::one();
        Dual { v, d }
    }

    /// Seed every entry of `x` as an independent variable.
    pub fn seed(x: &[S]) -> Vec<Self> {
        let n = x.len();
        x.iter()
            .enumerate()
            .map(|(i, v)| Dual::variable(v.clone(), i, n))
            .collect()
    }

    /// Partial derivative along direction `i` (zero for constants).
    pub fn partial(&self, i: usize) -> S {
        self.d.get(i).cloned().unwrap_or_else(S::zero)
    }

    fn combine(a: &[S], b: &[S], fa: &S, fb: &S) -> Vec<S> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => fa.clone() * x.clone() + fb.clone() * y.clone(),
                (Some(x), None) => fa.clone() * x.clone(),
                (None, Some(y)) => fb.clone() * y.clone(),
                (None, None) => S::zero(),
            })
            .collect()
    }

    fn scale(&self, f: &S) -> Vec<S> {
        self.d.iter().map(|x| f.clone() * x.clone()).collect()
    }
}

impl<S: Field> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = Self::combine(&self.d, &o.d, &S::one(), &S::one());
        Dual { v: self.v + o.v, d }
    }
}

impl<S: Field> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = Self::combine(&self.d, &o.d, &S::one(), &-S::one());
        Dual { v: self.v - o.v, d }
    }
}

impl<S: Field> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = Self::combine(&self.d, &o.d, &o.v, &self.v);
        Dual { v: self.v * o.v, d }
    }
}

impl<S: Field> Div for Dual<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.v.recip();
        let q = self.v.clone() * inv.clone();
        // (a/b)' = (a' - q b') / b
        let d = Self::combine(&self.d, &o.d, &inv, &(-(q.clone() * inv.clone())));
        Dual { v: q, d }
    }
}

impl<S: Field> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            v: -self.v,
            d: self.d.into_iter().map(|x| -x).collect(),
        }
    }
}

impl<S: Field> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.iter().all(|x| x.is_zero())
    }
}

impl<S: Field> One for Dual<S> {
    fn one() -> Self {
        Dual::constant(S::one())
    }
}

impl<S: Field> Field for Dual<S> {
    fn from_i64(n: i64) -> Self {
        Dual::constant(S::from_i64(n))
    }
}

impl<S: Real> Real for Dual<S> {
    fn cbrt(&self) -> Self {
        let r = self.v.cbrt();
        // d cbrt(x) = cbrt(x) / (3x) dx
        let f = r.clone() / (S::from_i64(3) * self.v.clone());
        Dual { v: r, d: self.scale(&f) }
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(S::from_f64(x))
    }
    fn value(&self) -> f64 {
        self.v.value()
    }
}

/// Gradient of a scalar function at `x`, by one forward pass.
pub fn gradient<S: Field, G>(f: G, x: &[S]) -> (S, Vec<S>)
where
    G: Fn(&[Dual<S>]) -> Dual<S>,
{
    let out = f(&Dual::seed(x));
    let g = (0..x.len()).map(|i| out.partial(i)).collect();
    (out.v, g)
}
