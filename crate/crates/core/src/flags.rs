//! Exact projective geometry of flags: ratio invariants and canonical
//! reconstruction of flag configurations from coordinates.

use crate::error::{Error, Result};
use crate::field::{qi, Field};
use crate::mat3::{cross, det3, dot, Mat3};
use num::{BigRational, Signed, Zero};

type Q = BigRational;

/// A point of the projective plane as a homogeneous column triple.
#[derive(Clone, Debug)]
pub struct ProjPoint(pub [Q; 3]);

/// A line of the projective plane as a homogeneous row triple.
#[derive(Clone, Debug)]
pub struct ProjLine(pub [Q; 3]);

fn proportional(a: &[Q; 3], b: &[Q; 3]) -> bool {
    cross(a, b).iter().all(|x| x.is_zero())
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &Self) -> bool {
        proportional(&self.0, &o.0)
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, o: &Self) -> bool {
        proportional(&self.0, &o.0)
    }
}

impl ProjPoint {
    pub fn new(v: [Q; 3]) -> Self {
        ProjPoint(v)
    }
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        ProjPoint([qi(a), qi(b), qi(c)])
    }
    /// Line through two points.
    pub fn join(&self, o: &ProjPoint) -> ProjLine {
        ProjLine(cross(&self.0, &o.0))
    }
    pub fn scaled(&self, s: &Q) -> Self {
        ProjPoint(self.0.clone().map(|x| x * s.clone()))
    }
}

impl ProjLine {
    pub fn new(v: [Q; 3]) -> Self {
        ProjLine(v)
    }
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        ProjLine([qi(a), qi(b), qi(c)])
    }
    /// Evaluate the line on a point.
    pub fn eval(&self, p: &ProjPoint) -> Q {
        dot(&self.0, &p.0)
    }
    /// Intersection point of two lines.
    pub fn meet(&self, o: &ProjLine) -> ProjPoint {
        ProjPoint(cross(&self.0, &o.0))
    }
    pub fn scaled(&self, s: &Q) -> Self {
        ProjLine(self.0.clone().map(|x| x * s.clone()))
    }
}

/// A point together with a line through it.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag {
    pub point: ProjPoint,
    pub line: ProjLine,
}

impl Flag {
    pub fn new(point: ProjPoint, line: ProjLine) -> Result<Self> {
        if line.eval(&point) != Q::zero() {
            return Err(Error::DegenerateConfiguration);
        }
        Ok(Flag { point, line })
    }

    /// Image under the projective map `m` (points by `m`, lines by `m^-1`).
    pub fn transform(&self, m: &Mat3<Q>, m_inv: &Mat3<Q>) -> Flag {
        Flag { point: ProjPoint(m.apply(&self.point.0)), line: ProjLine(m_inv.apply_row(&self.line.0)) }
    }
}

/// Cross ratio value: finite, or the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum CrossValue {
    Finite(Q),
    Infinite,
}

impl CrossValue {
    pub fn finite(self) -> Option<Q> {
        match self {
            CrossValue::Finite(q) => Some(q),
            CrossValue::Infinite => None,
        }
    }
}

/// Triple ratio of three flags.
pub fn triple_ratio(f0: &Flag, f1: &Flag, f2: &Flag) -> Result<Q> {
    let num = f0.line.eval(&f1.point) * f1.line.eval(&f2.point) * f2.line.eval(&f0.point);
    let den = f0.line.eval(&f2.point) * f1.line.eval(&f0.point) * f2.line.eval(&f1.point);
    if den.is_zero() || num.is_zero() {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(num / den)
}

fn det2(a: &[Q; 3], b: &[Q; 3], i: usize, j: usize) -> Q {
    a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()
}

/// Cross ratio of four homogeneous triples lying on a projective line,
/// with collinearity already established.
fn cross_collinear(p: [&[Q; 3]; 4]) -> std::result::Result<CrossValue, Error> {
    // project to the first coordinate pair that separates P0 from P1
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d01 = det2(p[0], p[1], i, j);
        if d01.is_zero() {
            continue;
        }
        let d12 = det2(p[1], p[2], i, j);
        let d02 = det2(p[0], p[2], i, j);
        if d12.is_zero() || d02.is_zero() {
            return Err(Error::CoincidentBasePoints);
        }
        let d23 = det2(p[2], p[3], i, j);
        let d03 = det2(p[0], p[3], i, j);
        if d03.is_zero() {
            return Ok(CrossValue::Infinite);
        }
        return Ok(CrossValue::Finite(d01 * d23 / (d03 * d12)));
    }
    Err(Error::CoincidentBasePoints)
}

/// Cross ratio of four collinear points.
pub fn cross_ratio_points(p0: &ProjPoint, p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<CrossValue> {
    if proportional(&p0.0, &p1.0) || proportional(&p1.0, &p2.0) || proportional(&p0.0, &p2.0) {
        return Err(Error::CoincidentBasePoints);
    }
    if !det3(&p0.0, &p1.0, &p2.0).is_zero() || !det3(&p0.0, &p1.0, &p3.0).is_zero() {
        return Err(Error::NotCollinear);
    }
    cross_collinear([&p0.0, &p1.0, &p2.0, &p3.0])
}

/// Cross ratio of four concurrent lines (dual to the point version).
pub fn cross_ratio_lines(l0: &ProjLine, l1: &ProjLine, l2: &ProjLine, l3: &ProjLine) -> Result<CrossValue> {
    if proportional(&l0.0, &l1.0) || proportional(&l1.0, &l2.0) || proportional(&l0.0, &l2.0) {
        return Err(Error::CoincidentBasePoints);
    }
    if !det3(&l0.0, &l1.0, &l2.0).is_zero() || !det3(&l0.0, &l1.0, &l3.0).is_zero() {
        return Err(Error::NotConcurrent);
    }
    cross_collinear([&l0.0, &l1.0, &l2.0, &l3.0])
}

/// Quadruple ratio: the cross ratio at `V0` of the line of `F0` and the
/// lines towards `V3`, `V2`, `V1`.
pub fn quadruple_ratio(f0: &Flag, f1: &Flag, f2: &Flag, f3: &Flag) -> Result<Q> {
    let v0 = &f0.point;
    let v = cross_ratio_lines(&f0.line, &v0.join(&f3.point), &v0.join(&f2.point), &v0.join(&f1.point))
        .map_err(|_| Error::DegenerateConfiguration)?;
    match v {
        CrossValue::Finite(q) if !q.is_zero() => Ok(q),
        _ => Err(Error::DegenerateConfiguration),
    }
}

/// General position test for a list of flags: no point on another
/// flag's line, and no three points collinear.
pub fn in_general_position(fs: &[Flag]) -> bool {
    for (i, a) in fs.iter().enumerate() {
        for (j, b) in fs.iter().enumerate() {
            if i != j && a.line.eval(&b.point).is_zero() {
                return false;
            }
        }
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            for k in j + 1..fs.len() {
                if det3(&fs[i].point.0, &fs[j].point.0, &fs[k].point.0).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn positive(x: &Q) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter)
    }
}

/// The canonical triangle of flags with triple ratio `t`.
pub fn reconstruct_triangle(t: &Q) -> Result<[Flag; 3]> {
    positive(t)?;
    Ok([
        Flag { point: ProjPoint::from_ints(0, 0, 1), line: ProjLine([t.clone(), qi(1), qi(0)]) },
        Flag { point: ProjPoint::from_ints(1, 0, 1), line: ProjLine::from_ints(1, 0, -1) },
        Flag { point: ProjPoint::from_ints(0, 1, 1), line: ProjLine::from_ints(0, 1, -1) },
    ])
}

/// The canonical quadruple `(F0, F1, F2, F3)` with triangle ratios
/// `t012`, `t023` and edge ratios `e02`, `e20` on the diagonal `0 -> 2`.
pub fn canonical_quadruple(t012: &Q, t023: &Q, e02: &Q, e20: &Q) -> Result<[Flag; 4]> {
    for x in [t012, t023, e02, e20] {
        positive(x)?;
    }
    let one = qi(1);
    let f0 = Flag { point: ProjPoint::from_ints(0, 0, 1), line: ProjLine::from_ints(1, 0, 0) };
    let f1 = Flag {
        point: ProjPoint::from_ints(1, -1, 1),
        line: ProjLine([t012.clone(), t012.clone() + one.clone(), one.clone()]),
    };
    let f2 = Flag { point: ProjPoint::from_ints(1, 0, 0), line: ProjLine::from_ints(0, 0, 1) };
    let f3 = Flag {
        point: ProjPoint([e02.clone() * e20.clone(), e20.clone(), one.clone()]),
        line: ProjLine([one.clone(), -(e02.clone() * (one + t023.clone())), t023.clone() * e02.clone() * e20.clone()]),
    };
    Ok([f0, f1, f2, f3])
}

/// Matrix sending the standard frame to the four given points.
fn frame_matrix(p: &[[Q; 3]; 4]) -> Option<Mat3<Q>> {
    let a = Mat3::from_cols(&[p[0].clone(), p[1].clone(), p[2].clone()]);
    let c = a.inverse()?.apply(&p[3]);
    if c.iter().any(|x| x.is_zero()) {
        return None;
    }
    Some(Mat3::from_fn(|i, j| a.0[i][j].clone() * c[j].clone()))
}

/// Projective map sending four points in general position to four others.
pub fn projective_map(src: &[[Q; 3]; 4], dst: &[[Q; 3]; 4]) -> Option<Mat3<Q>> {
    let s = frame_matrix(src)?;
    let d = frame_matrix(dst)?;
    Some(d.mul_ref(&s.inverse()?))
}

/// Projective map carrying one triangle of flags onto another with the
/// same triple ratio (points to points, lines to lines).
pub fn map_between_triangles(src: &[Flag; 3], dst: &[Flag; 3]) -> Option<Mat3<Q>> {
    let four = |f: &[Flag; 3]| {
        [f[0].point.0.clone(), f[1].point.0.clone(), f[2].point.0.clone(), f[0].line.meet(&f[1].line).0]
    };
    projective_map(&four(src), &four(dst))
}

/// The flag across the edge `tail -> head` of the triangle
/// `(tail, head, opposite)`, such that the new triangle has triple ratio
/// `t_new` and the edge has ratio `e_out` at the tail and `e_in` at the
/// head.
pub fn extend_across_edge(
    tail: &Flag,
    head: &Flag,
    opposite: &Flag,
    e_out: &Q,
    e_in: &Q,
    t_new: &Q,
) -> Result<Flag> {
    for x in [e_out, e_in, t_new] {
        positive(x)?;
    }
    extend_unchecked(tail, head, opposite, e_out, e_in, t_new)
}

/// As [`extend_across_edge`] without the positivity check, so that
/// non-convex configurations can be produced on purpose.
pub fn extend_unchecked(tail: &Flag, head: &Flag, opposite: &Flag, e_out: &Q, e_in: &Q, t_new: &Q) -> Result<Flag> {
    let one = qi(1);
    let v3 = [e_out.clone() * e_in.clone(), e_in.clone(), one.clone()];
    let src = [[qi(0), qi(0), qi(1)], [qi(1), qi(0), qi(0)], v3, [qi(0), qi(1), qi(0)]];
    let dst = [
        tail.point.0.clone(),
        head.point.0.clone(),
        opposite.point.0.clone(),
        tail.line.meet(&head.line).0,
    ];
    let m = projective_map(&src, &dst).ok_or(Error::DegeneratePair)?;
    let m_inv = m.inverse().ok_or(Error::DegeneratePair)?;
    let f1 = Flag {
        point: ProjPoint::from_ints(1, -1, 1),
        line: ProjLine([t_new.clone(), t_new.clone() + one.clone(), one]),
    };
    Ok(f1.transform(&m, &m_inv))
}

/// Ratios seen from vertex 1 of the canonical square: returns
/// `(t123, t013, e13, e31)`.
pub fn c4_rotate(t012: &Q, t023: &Q, e02: &Q, e20: &Q) -> Result<(Q, Q, Q, Q)> {
    for x in [t012, t023, e02, e20] {
        positive(x)?;
    }
    Ok(c4_formula(t012, t023, e02, e20))
}

pub(crate) fn c4_formula<F: Field>(t012: &F, t023: &F, e02: &F, e20: &F) -> (F, F, F, F) {
    let one = F::one();
    let (a, b) = square_polys(t012, t023, e02, e20);
    let t123 = t012.clone() * a.clone() / b.clone();
    let t013 = t023.clone() * b / a;
    let e13 = (e20.clone() + one.clone()) / ((e02.clone() + one.clone()) * t012.clone() * e20.clone());
    let e31 = (e02.clone() + one.clone()) / (e02.clone() * t023.clone() * (e20.clone() + one));
    (t123, t013, e13, e31)
}

/// The two subtraction-free polynomials appearing in the flip formulas.
pub(crate) fn square_polys<F: Field>(t012: &F, t023: &F, e02: &F, e20: &F) -> (F, F) {
    let one = F::one();
    let a = e02.clone() * t023.clone() * e20.clone() + e02.clone() * t023.clone() + e02.clone() + one.clone();
    let b = e02.clone() * t012.clone() * e20.clone() + t012.clone() * e20.clone() + e20.clone() + one;
    (a, b)
}
