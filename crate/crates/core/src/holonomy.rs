//! Monodromy of dual paths, conjugation invariants, peripheral monomials
//! and the classification of ends.

use crate::coords::CoordVector;
use crate::error::{Error, Result};
use crate::field::{qi, rational_cbrt, Field, Real};
use crate::linalg::rank_i64;
use crate::mat3::Mat3;
use crate::surface::{prev, tri, DualPath, IdealTriangulation};
use num::{BigRational, One, Signed, Zero};
use std::cmp::Ordering;

type Q = BigRational;

/// Unnormalised triangle generator `[[0,0,1],[0,-1,-1],[z,z+1,1]]`, det `z`.
pub fn gen_t<F: Field>(z: &F) -> Mat3<F> {
    let (o, l) = (F::zero(), F::one());
    Mat3([
        [o.clone(), o.clone(), l.clone()],
        [o.clone(), -l.clone(), -l.clone()],
        [z.clone(), z.clone() + l.clone(), l],
    ])
}

/// Inverse of [`gen_t`].
pub fn gen_t_inv<F: Field>(z: &F) -> Mat3<F> {
    gen_t(z).adjugate().scale(&z.recip())
}

/// Unnormalised edge generator `[[0,0,y],[0,-1,0],[1/x,0,0]]`, det `y/x`.
pub fn gen_e<F: Field>(x: &F, y: &F) -> Mat3<F> {
    let o = F::zero();
    Mat3([
        [o.clone(), o.clone(), y.clone()],
        [o.clone(), -F::one(), o.clone()],
        [x.recip(), o.clone(), o],
    ])
}

fn positive(x: &Q) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter)
    }
}

/// A projective class of 3x3 matrices, stored unnormalised.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyMatrix {
    pub entries: Mat3<Q>,
    pub det: Q,
}

impl MonodromyMatrix {
    pub fn new(entries: Mat3<Q>) -> Result<Self> {
        let det = entries.det();
        if det.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        Ok(MonodromyMatrix { entries, det })
    }

    pub fn gen_t(z: &Q) -> Result<Self> {
        positive(z)?;
        Ok(MonodromyMatrix { entries: gen_t(z), det: z.clone() })
    }

    pub fn gen_e(x: &Q, y: &Q) -> Result<Self> {
        positive(x)?;
        positive(y)?;
        Ok(MonodromyMatrix { entries: gen_e(x, y), det: y.clone() / x.clone() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        MonodromyMatrix { entries: self.entries.mul_ref(&o.entries), det: self.det.clone() * o.det.clone() }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.entries.inverse().expect("nonzero determinant");
        MonodromyMatrix { entries: inv, det: self.det.recip() }
    }

    pub fn j_invariants(&self) -> (Q, Q) {
        j_invariants(&self.entries).expect("nonzero determinant")
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries.is_lower_triangular()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries.is_upper_triangular()
    }

    /// Diagonal entries cubed and divided by the determinant: the cubes of
    /// the eigenvalues of the SL(3) representative, for triangular matrices.
    pub fn diagonal_cubes(&self) -> [Q; 3] {
        let d = |i: usize| {
            let x = self.entries.0[i][i].clone();
            x.clone() * x.clone() * x / self.det.clone()
        };
        [d(0), d(1), d(2)]
    }

    /// `(M - cI)^3 = 0` for some rational `c` with `c^3 = det M`.
    pub fn is_projectively_unipotent(&self) -> bool {
        let Some(c) = rational_cbrt(&self.det) else {
            return false;
        };
        let n = self.entries.sub(&Mat3::identity().scale(&c));
        n.mul_ref(&n).mul_ref(&n) == Mat3::zero()
    }
}

/// Scale-free conjugation invariants `tr(M)^3/det M` and `tr(adj M)^3/det(M)^2`.
pub fn j_invariants(m: &Mat3<Q>) -> Result<(Q, Q)> {
    let d = m.det();
    if d.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let t = m.trace();
    let a = m.adjugate().trace();
    Ok((t.clone() * t.clone() * t / d.clone(), a.clone() * a.clone() * a / (d.clone() * d)))
}

/// Monodromy of a dual path over any field, from flat coordinate values.
///
/// A closed path with exits `s_0..s_m` gives the product over `i` of
/// `T(t_i)^{eps_i} E(e(s_i), e(rev s_i))`, where `t_i` is the triangle
/// of `s_i` and `eps_i` the turn made there. An open path starts with
/// the first crossing and has no turn at either end.
pub fn monodromy_values<F: Field>(tr: &IdealTriangulation, v: &[F], path: &DualPath) -> Mat3<F> {
    let n = tr.n_triangles();
    let turns = path.turns(tr);
    let mut m = Mat3::identity();
    for (i, &s) in path.exits.iter().enumerate() {
        let turn = if path.closed {
            Some(turns[i])
        } else if i > 0 {
            Some(turns[i - 1])
        } else {
            None
        };
        match turn {
            Some(1) => m = m.mul_ref(&gen_t(&v[tri(s)])),
            Some(-1) => m = m.mul_ref(&gen_t_inv(&v[tri(s)])),
            _ => {}
        }
        m = m.mul_ref(&gen_e(&v[n + s], &v[n + tr.partner(s)]));
    }
    m
}

/// Determinant of [`monodromy_values`] as the product of the factor
/// determinants, which avoids cancellation in floating point.
pub fn monodromy_det_values<F: Field>(tr: &IdealTriangulation, v: &[F], path: &DualPath) -> F {
    let n = tr.n_triangles();
    let turns = path.turns(tr);
    let mut d = F::one();
    for (i, &s) in path.exits.iter().enumerate() {
        let turn = if path.closed { Some(turns[i]) } else if i > 0 { Some(turns[i - 1]) } else { None };
        match turn {
            Some(1) => d = d * v[tri(s)].clone(),
            Some(-1) => d = d / v[tri(s)].clone(),
            _ => {}
        }
        d = d * v[n + tr.partner(s)].clone() / v[n + s].clone();
    }
    d
}

/// Exact monodromy of a path.
pub fn monodromy_of_path(c: &CoordVector, path: &DualPath) -> Result<MonodromyMatrix> {
    for &s in &path.exits {
        if s >= c.triangulation().n_slots() {
            return Err(Error::InconsistentPath(format!("slot {s} out of range")));
        }
    }
    let m = monodromy_values(c.triangulation(), c.values(), path);
    MonodromyMatrix::new(m)
}

/// SL(3)-normalised trace `tr(M) / det(M)^{1/3}`; 3 for the empty path.
pub fn normalized_trace<F: Real>(tr: &IdealTriangulation, v: &[F], path: &DualPath) -> F {
    if path.is_empty() {
        return F::from_i64(3);
    }
    let m = monodromy_values(tr, v, path);
    m.trace() / monodromy_det_values(tr, v, path).cbrt()
}

/// The two monomials attached to an ideal vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct PeripheralMonomials {
    pub vertex: usize,
    /// Product of the edge values of edges leaving the vertex.
    pub x: Q,
    /// Product over edges arriving at the vertex of edge value times the
    /// value of the triangle in which the edge is coherent.
    pub y: Q,
}

/// Exponent rows `(X, Y)` of the peripheral monomials of `v`.
pub fn peripheral_exponents(tr: &IdealTriangulation, v: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = tr.n_triangles();
    let mut x = vec![0i64; 4 * n];
    let mut y = vec![0i64; 4 * n];
    for e in tr.vertex_link(v)? {
        x[n + e.edge] += 1;
        let inbound = prev(e.edge);
        y[n + inbound] += 1;
        y[tri(inbound)] += 1;
    }
    Ok((x, y))
}

/// Value of the monomial with exponent vector `a`.
pub fn eval_monomial(values: &[Q], a: &[i64]) -> Q {
    let mut r = Q::one();
    for (v, &k) in values.iter().zip(a) {
        let base = if k < 0 { v.recip() } else { v.clone() };
        for _ in 0..k.unsigned_abs() {
            r *= base.clone();
        }
    }
    r
}

pub fn peripheral_monomials(c: &CoordVector, v: usize) -> Result<PeripheralMonomials> {
    let (xa, ya) = peripheral_exponents(c.triangulation(), v)?;
    Ok(PeripheralMonomials { vertex: v, x: eval_monomial(c.values(), &xa), y: eval_monomial(c.values(), &ya) })
}

/// Cubes of the eigenvalues of the peripheral holonomy:
/// `(1/(X Y^2), Y/X, X^2 Y)`.
pub fn eigenvalue_exponents(m: &PeripheralMonomials) -> (Q, Q, Q) {
    let (x, y) = (&m.x, &m.y);
    (
        (x.clone() * y.clone() * y.clone()).recip(),
        y.clone() / x.clone(),
        x.clone() * x.clone() * y.clone(),
    )
}

/// Hyperbolic ends whose distinguished vertex is the saddle point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaximalCase {
    LineThroughAttracting,
    LineThroughRepelling,
}

/// Hyperbolic ends whose distinguished vertex is not the saddle point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinimalCase {
    AttractingLineThroughSaddle,
    AttractingLineThroughRepelling,
    RepellingLineThroughSaddle,
    RepellingLineThroughAttracting,
}

/// Quasi-hyperbolic ends: a repeated eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    AttractingDoubleLineMissesRepelling,
    AttractingDoubleLineThroughRepelling,
    RepellingDoubleLineMissesAttracting,
    RepellingDoubleLineThroughAttracting,
    AttractingSimple,
    RepellingSimple,
}

/// Geometry of an end, read off the peripheral monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndType {
    Cusp,
    Special(SpecialCase),
    HyperbolicMinimal(MinimalCase),
    HyperbolicMaximal(MaximalCase),
}

impl EndType {
    /// All thirteen cases.
    pub fn all() -> Vec<EndType> {
        use MaximalCase::*;
        use MinimalCase::*;
        use SpecialCase::*;
        vec![
            EndType::HyperbolicMaximal(LineThroughAttracting),
            EndType::HyperbolicMaximal(LineThroughRepelling),
            EndType::HyperbolicMinimal(AttractingLineThroughSaddle),
            EndType::HyperbolicMinimal(AttractingLineThroughRepelling),
            EndType::HyperbolicMinimal(RepellingLineThroughSaddle),
            EndType::HyperbolicMinimal(RepellingLineThroughAttracting),
            EndType::Special(AttractingDoubleLineMissesRepelling),
            EndType::Special(AttractingDoubleLineThroughRepelling),
            EndType::Special(RepellingDoubleLineMissesAttracting),
            EndType::Special(RepellingDoubleLineThroughAttracting),
            EndType::Special(AttractingSimple),
            EndType::Special(RepellingSimple),
            EndType::Cusp,
        ]
    }

    pub fn name(&self) -> String {
        match self {
            EndType::Cusp => "cusp".into(),
            EndType::Special(c) => format!("special:{c:?}"),
            EndType::HyperbolicMinimal(c) => format!("hyperbolic-minimal:{c:?}"),
            EndType::HyperbolicMaximal(c) => format!("hyperbolic-maximal:{c:?}"),
        }
    }
}

/// Total decision function on the signs of `(X-1, Y-1, XY-1)`.
pub fn classify_end(m: &PeripheralMonomials) -> EndType {
    use MaximalCase::*;
    use MinimalCase::*;
    use Ordering::*;
    use SpecialCase::*;
    let one = Q::one();
    let sx = m.x.cmp(&one);
    let sy = m.y.cmp(&one);
    let sxy = (m.x.clone() * m.y.clone()).cmp(&one);
    match (sx, sy, sxy) {
        (Equal, Equal, _) => EndType::Cusp,
        (Less, Less, _) => EndType::HyperbolicMinimal(AttractingLineThroughSaddle),
        (Greater, Greater, _) => EndType::HyperbolicMinimal(RepellingLineThroughSaddle),
        (Greater, Less, Less) => EndType::HyperbolicMinimal(AttractingLineThroughRepelling),
        (Less, Greater, Greater) => EndType::HyperbolicMinimal(RepellingLineThroughAttracting),
        (Less, Greater, Less) => EndType::HyperbolicMaximal(LineThroughAttracting),
        (Greater, Less, Greater) => EndType::HyperbolicMaximal(LineThroughRepelling),
        (Less, Equal, _) => EndType::Special(AttractingDoubleLineMissesRepelling),
        (Greater, Less, Equal) => EndType::Special(AttractingDoubleLineThroughRepelling),
        (Greater, Equal, _) => EndType::Special(RepellingDoubleLineMissesAttracting),
        (Less, Greater, Equal) => EndType::Special(RepellingDoubleLineThroughAttracting),
        (Equal, Less, _) => EndType::Special(AttractingSimple),
        (Equal, Greater, _) => EndType::Special(RepellingSimple),
    }
}

/// Every end is a cusp.
pub fn is_finite_area(c: &CoordVector) -> bool {
    (0..c.triangulation().n_vertices()).all(|v| {
        let m = peripheral_monomials(c, v).expect("valid vertex");
        m.x.is_one() && m.y.is_one()
    })
}

/// The developing image is bounded by a conic.
pub fn is_teichmuller(c: &CoordVector) -> bool {
    let tr = c.triangulation();
    (0..tr.n_triangles()).all(|t| c.triangle(t).is_one())
        && (0..tr.n_slots()).all(|s| c.edge(s) == c.edge(tr.partner(s)))
        && (0..tr.n_vertices()).all(|v| peripheral_monomials(c, v).expect("valid vertex").x.is_one())
}

/// Two ends can be glued: equal monomials, both minimal, and `X != Y`.
pub fn gluability_check(c: &CoordVector, v1: usize, v2: usize) -> Result<bool> {
    let m1 = peripheral_monomials(c, v1)?;
    let m2 = peripheral_monomials(c, v2)?;
    let minimal = |m: &PeripheralMonomials| matches!(classify_end(m), EndType::HyperbolicMinimal(_));
    Ok(m1.x == m2.x && m1.y == m2.y && minimal(&m1) && minimal(&m2) && m1.x != m1.y)
}

/// Exponent rows of the finite-area conditions `X_v = Y_v = 1`.
pub fn finite_area_constraints(tr: &IdealTriangulation) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for v in 0..tr.n_vertices() {
        let (x, y) = peripheral_exponents(tr, v).expect("valid vertex");
        rows.push(x);
        rows.push(y);
    }
    rows
}

/// Exponent rows of the conic conditions: triangle values 1, edge values
/// symmetric, and outbound products 1.
pub fn teichmuller_constraints(tr: &IdealTriangulation) -> Vec<Vec<i64>> {
    let n = tr.n_triangles();
    let mut rows = Vec::new();
    for t in 0..n {
        let mut r = vec![0; 4 * n];
        r[t] = 1;
        rows.push(r);
    }
    for s in tr.edges() {
        let mut r = vec![0; 4 * n];
        r[n + s] += 1;
        r[n + tr.partner(s)] -= 1;
        rows.push(r);
    }
    for v in 0..tr.n_vertices() {
        rows.push(peripheral_exponents(tr, v).expect("valid vertex").0);
    }
    rows
}

/// Exponent rows of the gluing equations `X_1 = X_2`, `Y_1 = Y_2`.
pub fn gluing_constraints(tr: &IdealTriangulation, v1: usize, v2: usize) -> Result<Vec<Vec<i64>>> {
    let (x1, y1) = peripheral_exponents(tr, v1)?;
    let (x2, y2) = peripheral_exponents(tr, v2)?;
    let diff = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<i64>>();
    Ok(vec![diff(&x1, &x2), diff(&y1, &y2)])
}

/// Rank of an integer constraint matrix.
pub fn constraint_rank(rows: &[Vec<i64>]) -> usize {
    rank_i64(rows)
}

/// Rescale a few coordinates of `c` so that each listed vertex gets the
/// prescribed `(X, Y)`. Works exactly by picking coordinates on which the
/// monomial exponents form an invertible block and the needed roots of
/// the target ratios are rational. Returns `None` if no such block exists.
pub fn solve_monomials(c: &CoordVector, targets: &[(usize, Q, Q)]) -> Option<CoordVector> {
    let tr = c.triangulation();
    let mut rows = Vec::new();
    let mut want = Vec::new();
    for (v, x, y) in targets {
        let (xr, yr) = peripheral_exponents(tr, *v).ok()?;
        let m = peripheral_monomials(c, *v).ok()?;
        rows.push(xr);
        rows.push(yr);
        want.push(x.clone() / m.x);
        want.push(y.clone() / m.y);
    }
    let k = rows.len();
    let ncols = c.len();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
        if let Some(inv) = crate::linalg::rational_inverse(&sub) {
            let mut values = c.values().to_vec();
            let mut ok = true;
            for (a, &j) in cols.iter().enumerate() {
                // combine integer powers first, then take one root
                let l = inv[a].iter().fold(num::BigInt::from(1), |l, e| num::integer::lcm(l, e.denom().clone()));
                let mut f = qi(1);
                for (w, e) in want.iter().zip(&inv[a]) {
                    let p = e.clone() * Q::from_integer(l.clone());
                    f *= crate::field::rational_pow(w, &p).expect("integer power of a positive value");
                }
                match crate::field::rational_pow(&f, &Q::new(1.into(), l)) {
                    Some(r) => f = r,
                    None => ok = false,
                }
                values[j] = values[j].clone() * f;
            }
            if ok {
                return CoordVector::new(tr.clone(), values).ok();
            }
        }
        // next k-combination of columns
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if cols[i] < ncols - k + i {
                break;
            }
        }
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// `(X, Y)` pairs, one per sign pattern, realising every end type.
pub fn sample_monomials_for(e: EndType) -> (Q, Q) {
    use MaximalCase::*;
    use MinimalCase::*;
    use SpecialCase::*;
    // on the once-punctured torus Y / X is a cube, so the targets keep it one
    let q = crate::field::q;
    let (x, y) = match e {
        EndType::Cusp => ((1, 1), (1, 1)),
        EndType::HyperbolicMinimal(AttractingLineThroughSaddle) => ((1, 2), (1, 2)),
        EndType::HyperbolicMinimal(RepellingLineThroughSaddle) => ((2, 1), (2, 1)),
        EndType::HyperbolicMinimal(AttractingLineThroughRepelling) => ((2, 1), (1, 4)),
        EndType::HyperbolicMinimal(RepellingLineThroughAttracting) => ((1, 2), (4, 1)),
        EndType::HyperbolicMaximal(LineThroughAttracting) => ((1, 4), (2, 1)),
        EndType::HyperbolicMaximal(LineThroughRepelling) => ((4, 1), (1, 2)),
        EndType::Special(AttractingDoubleLineMissesRepelling) => ((1, 8), (1, 1)),
        EndType::Special(AttractingDoubleLineThroughRepelling) => ((8, 1), (1, 8)),
        EndType::Special(RepellingDoubleLineMissesAttracting) => ((8, 1), (1, 1)),
        EndType::Special(RepellingDoubleLineThroughAttracting) => ((1, 8), (8, 1)),
        EndType::Special(AttractingSimple) => ((1, 1), (1, 8)),
        EndType::Special(RepellingSimple) => ((1, 1), (8, 1)),
    };
    (q(x.0, x.1), q(y.0, y.1))
}
