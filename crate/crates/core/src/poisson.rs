//! The coordinate Poisson bracket, Casimirs and ranks, trace functions,
//! and Goldman's bracket on curve pairs.

use crate::coords::{flip_values, CoordVector};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::field::{rational_cbrt, to_f64, Field, Real};
use crate::holonomy::{monodromy_det_values, monodromy_values, normalized_trace};
use crate::linalg::rank;
use crate::surface::{prev, side, slot, DualPath, FlipRelabel, IdealTriangulation};
use num::{BigRational, Signed, Zero};
use rand::Rng;

/// Antisymmetric integer table on triangles and oriented edges.
///
/// Flat indices follow [`CoordVector`]: triangles first, then slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    n: usize,
    table: Vec<i32>,
}

impl EpsilonTable {
    /// Table for a triangulation satisfying assumption (I).
    pub fn new(tr: &IdealTriangulation) -> Result<Self> {
        if !tr.validate_distinct_faces() {
            return Err(Error::AssumptionIViolated);
        }
        Ok(Self::amalgamated(tr))
    }

    /// Sum of the per-triangle contributions, defined for every
    /// triangulation; agrees with [`EpsilonTable::new`] under (I).
    pub fn amalgamated(tr: &IdealTriangulation) -> Self {
        let nt = tr.n_triangles();
        let n = 4 * nt;
        let mut e = EpsilonTable { n, table: vec![0; n * n] };
        for t in 0..nt {
            for k in 0..3 {
                let s = slot(t, k);
                // coherent edge against its triangle: -1; reverse: +1
                e.add(nt + s, t, -1);
                e.add(nt + tr.partner(s), t, 1);
            }
            for k in 0..3 {
                // both edges leaving corner k: the coherent side and the
                // reverse of the side arriving there
                let c = slot(t, k);
                let a = tr.partner(prev(c));
                e.add(nt + c, nt + a, 1);
            }
        }
        e
    }

    fn add(&mut self, i: usize, j: usize, v: i32) {
        self.table[i * self.n + j] += v;
        self.table[j * self.n + i] -= v;
    }

    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.table[i * self.n + j]
    }

    /// Exact rank of the bracket matrix `2 eps_ij q_i q_j` at `c`.
    pub fn rank_at(&self, c: &CoordVector) -> usize {
        let v = c.values();
        let two = crate::field::qi(2);
        let rows: Vec<Vec<BigRational>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| two.clone() * crate::field::qi(self.get(i, j) as i64) * v[i].clone() * v[j].clone())
                    .collect()
            })
            .collect();
        rank(&rows)
    }

    /// Bracket of the coordinate functions `i` and `j` at `q`.
    pub fn coordinate_bracket<F: Field>(&self, i: usize, j: usize, q: &[F]) -> F {
        F::from_i64(2 * self.get(i, j) as i64) * q[i].clone() * q[j].clone()
    }
}

/// Rank of the coordinate bracket at `c` (uses the amalgamated table).
pub fn poisson_rank(c: &CoordVector) -> usize {
    EpsilonTable::amalgamated(c.triangulation()).rank_at(c)
}

/// A monomial is a Casimir iff its exponent vector is in the kernel of
/// the table.
pub fn casimir_check(eps: &EpsilonTable, exponents: &[i64]) -> bool {
    (0..eps.len()).all(|j| exponents.iter().enumerate().map(|(i, &a)| a * eps.get(i, j) as i64).sum::<i64>() == 0)
}

/// A smooth function of the coordinates, evaluable over any real scalar
/// type so that dual numbers can differentiate it.
pub trait Observable {
    fn eval<F: Real>(&self, q: &[F]) -> F;
}

impl<T: Observable + ?Sized> Observable for &T {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        (**self).eval(q)
    }
}

/// The coordinate function `q_i`.
#[derive(Clone, Debug)]
pub struct Coordinate(pub usize);

impl Observable for Coordinate {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        q[self.0].clone()
    }
}

/// `prod q_i^{a_i}`.
#[derive(Clone, Debug)]
pub struct Monomial(pub Vec<i64>);

impl Observable for Monomial {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        let mut r = F::one();
        for (x, &a) in q.iter().zip(&self.0) {
            let b = if a < 0 { x.recip() } else { x.clone() };
            for _ in 0..a.unsigned_abs() {
                r = r * b.clone();
            }
        }
        r
    }
}

/// SL(3) trace of the holonomy along a closed curve.
#[derive(Clone, Debug)]
pub struct TraceObservable {
    pub tri: IdealTriangulation,
    pub path: DualPath,
}

impl TraceObservable {
    pub fn new(tri: &IdealTriangulation, path: &DualPath) -> Result<Self> {
        if !path.closed {
            return Err(Error::InconsistentPath("trace needs a closed path".into()));
        }
        DualPath::closed(tri, path.exits.clone())?;
        Ok(TraceObservable { tri: tri.clone(), path: path.clone() })
    }
}

impl Observable for TraceObservable {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        normalized_trace(&self.tri, q, &self.path)
    }
}

/// A random rational function: a few signed monomials plus terms
/// `d / (1 + q_j)`.
#[derive(Clone, Debug)]
pub struct RandomObservable {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
    poles: Vec<(f64, usize)>,
}

impl RandomObservable {
    pub fn sample<R: Rng>(rng: &mut R, n: usize) -> Self {
        let terms = (0..3)
            .map(|_| {
                let c = rng.gen_range(-1.5..1.5);
                let vars = (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..n), rng.gen_range(-1..=2))).collect();
                (c, vars)
            })
            .collect();
        let poles = (0..2).map(|_| (rng.gen_range(0.5..1.5), rng.gen_range(0..n))).collect();
        RandomObservable { terms, poles }
    }
}

impl Observable for RandomObservable {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        let mut r = F::zero();
        for (c, vars) in &self.terms {
            let mut m = F::from_f64(*c);
            for &(i, a) in vars {
                let b = if a < 0 { q[i].recip() } else { q[i].clone() };
                for _ in 0..a.unsigned_abs() {
                    m = m * b.clone();
                }
            }
            r = r + m;
        }
        for &(d, j) in &self.poles {
            r = r + F::from_f64(d) / (F::one() + q[j].clone());
        }
        r
    }
}

/// The bracket of two observables, itself an observable.
#[derive(Clone, Debug)]
pub struct Bracket<'a, A, B> {
    pub eps: &'a EpsilonTable,
    pub f: A,
    pub g: B,
}

impl<A: Observable, B: Observable> Observable for Bracket<'_, A, B> {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        fg_bracket_at(self.eps, &self.f, &self.g, q)
    }
}

/// Observable on the old coordinates obtained by flipping first.
#[derive(Clone, Debug)]
pub struct FlipPullback<A> {
    pub old: IdealTriangulation,
    pub relabel: FlipRelabel,
    pub obs: A,
}

impl<A: Observable> Observable for FlipPullback<A> {
    fn eval<F: Real>(&self, q: &[F]) -> F {
        self.obs.eval(&flip_values(&self.old, &self.relabel, q))
    }
}

/// `sum_ij 2 eps_ij q_i q_j df/dq_i dg/dq_j`, derivatives by dual numbers.
pub fn fg_bracket_at<F: Real, A: Observable, B: Observable>(eps: &EpsilonTable, f: &A, g: &B, q: &[F]) -> F {
    let seeded = Dual::seed(q);
    let df = f.eval(&seeded);
    let dg = g.eval(&seeded);
    let n = q.len();
    let mut acc = F::zero();
    for i in 0..n {
        let fi = df.partial(i);
        if fi.is_zero() {
            continue;
        }
        let mut row = F::zero();
        for j in 0..n {
            let e = eps.get(i, j);
            if e != 0 {
                row = row + F::from_i64(e as i64) * q[j].clone() * dg.partial(j);
            }
        }
        acc = acc + F::from_i64(2) * q[i].clone() * fi * row;
    }
    acc
}

/// The coordinate bracket at a coordinate vector, in floating point.
pub fn fg_bracket<A: Observable, B: Observable>(eps: &EpsilonTable, f: &A, g: &B, c: &CoordVector) -> f64 {
    fg_bracket_at(eps, f, g, &c.to_f64())
}

/// One transverse intersection of a curve pair with its resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub sign: i8,
    /// The loop product of the two curves based at this point.
    pub path: DualPath,
}

/// Two closed curves and their annotated intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedCurvePair {
    pub alpha: DualPath,
    pub beta: DualPath,
    pub intersections: Vec<Intersection>,
}

impl AnnotatedCurvePair {
    /// Pair annotated by [`tunnel_annotations`].
    pub fn annotate(tr: &IdealTriangulation, alpha: DualPath, beta: DualPath) -> Self {
        let intersections = tunnel_annotations(tr, &alpha, &beta);
        AnnotatedCurvePair { alpha, beta, intersections }
    }
}

/// Goldman's bracket of the two trace functions, with `n = 3`.
pub fn goldman_bracket_at<F: Real>(tr: &IdealTriangulation, pair: &AnnotatedCurvePair, q: &[F]) -> F {
    let ta = normalized_trace(tr, q, &pair.alpha);
    let tb = normalized_trace(tr, q, &pair.beta);
    let third = F::one() / F::from_i64(3);
    let mut acc = F::zero();
    for x in &pair.intersections {
        let t = normalized_trace(tr, q, &x.path);
        acc = acc + F::from_i64(x.sign as i64) * (t - third.clone() * ta.clone() * tb.clone());
    }
    acc
}

pub fn goldman_bracket(pair: &AnnotatedCurvePair, c: &CoordVector) -> f64 {
    goldman_bracket_at(c.triangulation(), pair, &c.to_f64())
}

/// `|2 {tr_a, tr_b}_Gol - {tr_a, tr_b}_FG|` at `c`.
///
/// Both brackets share the factor `(det M_a det M_b)^{-1/3}`; the rest is
/// evaluated exactly and the factor applied once at the end. Falls back to
/// floating point when an intersection loop has a determinant ratio
/// without a rational cube root.
pub fn compatibility_residual(eps: &EpsilonTable, pair: &AnnotatedCurvePair, c: &CoordVector) -> Result<f64> {
    let tr = c.triangulation();
    let fa = TraceObservable::new(tr, &pair.alpha)?;
    let fb = TraceObservable::new(tr, &pair.beta)?;
    for x in &pair.intersections {
        DualPath::closed(tr, x.path.exits.clone())?;
    }
    match exact_compatibility_defect(eps, pair, c) {
        Some((defect, scale)) => Ok(to_f64(&defect.abs()) * scale),
        None => {
            let gol = goldman_bracket(pair, c);
            let fg = fg_bracket(eps, &fa, &fb, c);
            Ok((2.0 * gol - fg).abs())
        }
    }
}

/// Unnormalised trace, its logarithmic derivatives `q_i d/dq_i`, and the
/// determinant with its exponent vector.
fn trace_data(tr: &IdealTriangulation, q: &[BigRational], path: &DualPath) -> (BigRational, Vec<BigRational>, BigRational, Vec<BigRational>) {
    let seeded = Dual::seed(q);
    let t = monodromy_values(tr, &seeded, path).trace();
    let d = monodromy_det_values(tr, &seeded, path);
    let dt: Vec<BigRational> = (0..q.len()).map(|i| q[i].clone() * t.partial(i)).collect();
    let k: Vec<BigRational> = (0..q.len()).map(|i| q[i].clone() * d.partial(i) / d.v.clone()).collect();
    (t.v, dt, d.v, k)
}

/// `2 G - F` with the common normalising factor removed, and that factor.
pub fn exact_compatibility_defect(
    eps: &EpsilonTable,
    pair: &AnnotatedCurvePair,
    c: &CoordVector,
) -> Option<(BigRational, f64)> {
    let tr = c.triangulation();
    let q = c.values();
    let third = BigRational::new(1.into(), 3.into());
    let (ta, dta, da, ka) = trace_data(tr, q, &pair.alpha);
    let (tb, dtb, db, kb) = trace_data(tr, q, &pair.beta);
    // q_i d/dq_i of tr/det^{1/3}, times det^{1/3}
    let la: Vec<BigRational> = (0..q.len()).map(|i| dta[i].clone() - third.clone() * ka[i].clone() * ta.clone()).collect();
    let lb: Vec<BigRational> = (0..q.len()).map(|i| dtb[i].clone() - third.clone() * kb[i].clone() * tb.clone()).collect();
    let mut fg = BigRational::zero();
    for i in 0..q.len() {
        for j in 0..q.len() {
            let e = eps.get(i, j);
            if e != 0 {
                fg += BigRational::from_integer((2 * e).into()) * la[i].clone() * lb[j].clone();
            }
        }
    }
    let mut gol = BigRational::zero();
    for x in &pair.intersections {
        let m = monodromy_values(tr, q, &x.path);
        let dx = monodromy_det_values(tr, q, &x.path);
        let r = rational_cbrt(&(da.clone() * db.clone() / dx))?;
        let term = m.trace() * r - third.clone() * ta.clone() * tb.clone();
        gol += BigRational::from_integer(x.sign.into()) * term;
    }
    let scale = 1.0 / to_f64(&(da * db)).cbrt();
    Some((BigRational::from_integer(2.into()) * gol - fg, scale))
}

/// Intersection annotations of two reduced closed dual paths.
///
/// The curves are read as ribbons through the dual graph. Every maximal
/// run of common crossings (in either direction) is a tunnel; the curves
/// cross there exactly when they enter and leave the tunnel on opposite
/// sides. The sign records which side the first curve enters from.
pub fn tunnel_annotations(tr: &IdealTriangulation, alpha: &DualPath, beta: &DualPath) -> Vec<Intersection> {
    let (a, b) = (&alpha.exits, &beta.exits);
    let (m, n) = (a.len(), b.len());
    let mut out = Vec::new();
    if m == 0 || n == 0 {
        return out;
    }
    let p = |s: usize| tr.partner(s);
    let at = |v: &[usize], i: isize| v[i.rem_euclid(v.len() as isize) as usize];
    let enters_left = |i: usize| side(p(at(a, i as isize - 1))) == (side(a[i]) + 1) % 3;
    let leaves_right = |last: isize| side(at(a, last + 1)) == (side(p(at(a, last))) + 1) % 3;
    let limit = (m * n) as isize;
    for i in 0..m {
        for j in 0..n {
            let (ii, jj) = (i as isize, j as isize);
            if a[i] == b[j] && at(a, ii - 1) != at(b, jj - 1) {
                let mut l = 1;
                while l <= limit && at(a, ii + l) == at(b, jj + l) {
                    l += 1;
                }
                if l <= limit {
                    let left = enters_left(i);
                    if left == leaves_right(ii + l - 1) {
                        let mut e = alpha.rotated(i).exits;
                        e.extend(beta.rotated(j).exits);
                        let path = DualPath { exits: e, closed: true }.reduced(tr);
                        out.push(Intersection { sign: if left { 1 } else { -1 }, path });
                    }
                }
            }
            if a[i] == p(b[j]) && at(a, ii - 1) != p(at(b, jj + 1)) {
                let mut l = 1;
                while l <= limit && at(a, ii + l) == p(at(b, jj - l)) {
                    l += 1;
                }
                if l <= limit {
                    let left = enters_left(i);
                    if left == leaves_right(ii + l - 1) {
                        let mut e = alpha.rotated(i).exits;
                        e.extend(beta.rotated((j + 1) % n).exits);
                        let path = DualPath { exits: e, closed: true }.reduced(tr);
                        out.push(Intersection { sign: if left { -1 } else { 1 }, path });
                    }
                }
            }
        }
    }
    out
}
