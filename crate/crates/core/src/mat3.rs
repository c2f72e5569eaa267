//! 3x3 matrices and 3-vectors over any [`Field`].

use crate::field::Field;
use std::ops::Mul;

/// Row-major 3x3 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<F>(pub [[F; 3]; 3]);

impl<F: Field> Mat3<F> {
    pub fn from_fn(f: impl Fn(usize, usize) -> F) -> Self {
        Mat3([
            [f(0, 0), f(0, 1), f(0, 2)],
            [f(1, 0), f(1, 1), f(1, 2)],
            [f(2, 0), f(2, 1), f(2, 2)],
        ])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| F::zero())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(c: &[[F; 3]; 3]) -> Self {
        Self::from_fn(|i, j| c[j][i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.0[i][j]
    }

    pub fn det(&self) -> F {
        let m = &self.0;
        let c = |a: usize, b: usize, x: usize, y: usize| {
            m[a][x].clone() * m[b][y].clone() - m[a][y].clone() * m[b][x].clone()
        };
        m[0][0].clone() * c(1, 2, 1, 2) - m[0][1].clone() * c(1, 2, 0, 2) + m[0][2].clone() * c(1, 2, 0, 1)
    }

    /// Classical adjugate, so that `m * adj(m) = det(m) I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let minor = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            m[rs[0]][cs[0]].clone() * m[rs[1]][cs[1]].clone()
                - m[rs[0]][cs[1]].clone() * m[rs[1]][cs[0]].clone()
        };
        Self::from_fn(|i, j| {
            let v = minor(j, i);
            if (i + j) % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let inv = d.recip();
        Some(self.adjugate().scale(&inv))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() * s.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn trace(&self) -> F {
        self.0[0][0].clone() + self.0[1][1].clone() + self.0[2][2].clone()
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() - o.0[i][j].clone())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            self.0[i][0].clone() * o.0[0][j].clone()
                + self.0[i][1].clone() * o.0[1][j].clone()
                + self.0[i][2].clone() * o.0[2][j].clone()
        })
    }

    /// Column vector image `m v`.
    pub fn apply(&self, v: &[F; 3]) -> [F; 3] {
        let r = |i: usize| {
            self.0[i][0].clone() * v[0].clone() + self.0[i][1].clone() * v[1].clone() + self.0[i][2].clone() * v[2].clone()
        };
        [r(0), r(1), r(2)]
    }

    /// Row vector image `l m`.
    pub fn apply_row(&self, l: &[F; 3]) -> [F; 3] {
        let c = |j: usize| {
            l[0].clone() * self.0[0][j].clone() + l[1].clone() * self.0[1][j].clone() + l[2].clone() * self.0[2][j].clone()
        };
        [c(0), c(1), c(2)]
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.0[0][1].is_zero() && self.0[0][2].is_zero() && self.0[1][2].is_zero()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.0[1][0].is_zero() && self.0[2][0].is_zero() && self.0[2][1].is_zero()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat3<G> {
        Mat3::from_fn(|i, j| f(&self.0[i][j]))
    }
}

impl<F: Field> Mul for Mat3<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

/// Pairing of a row vector with a column vector.
pub fn dot<F: Field>(l: &[F; 3], p: &[F; 3]) -> F {
    l[0].clone() * p[0].clone() + l[1].clone() * p[1].clone() + l[2].clone() * p[2].clone()
}

/// Cross product: the line through two points, or the point on two lines.
pub fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// Determinant of three column vectors.
pub fn det3<F: Field>(a: &[F; 3], b: &[F; 3], c: &[F; 3]) -> F {
    dot(&cross(a, b), c)
}
