//! Coordinate vectors and the coordinate-change maps: orientation
//! reversal, duality, edge flip, and the Parreau edge parameter.
//!
//! Values are indexed as triangles `0..n` followed by slots `n + s`.
//! The edge value at slot `s` is the edge ratio of the oriented edge `s`
//! measured at its tail.

use crate::error::{Error, Result};
use crate::field::{qi, Field};
use crate::flags::square_polys;
use crate::surface::{mirror_slot, slot_label, tri, FlipRelabel, IdealTriangulation, Relabeling, SquareSlots};
use num::{BigRational, Signed};
use rand::Rng;

type Q = BigRational;

/// A random rational `p/q` with `1 <= p, q <= 9`.
pub fn random_positive<R: Rng + ?Sized>(rng: &mut R) -> Q {
    crate::field::q(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Positive rational value on every triangle and every oriented edge.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordVector {
    tri: IdealTriangulation,
    values: Vec<Q>,
}

impl CoordVector {
    pub fn new(tri: IdealTriangulation, values: Vec<Q>) -> Result<Self> {
        if values.len() != 4 * tri.n_triangles() {
            return Err(Error::InvalidIndex(values.len()));
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::NonPositiveParameter);
        }
        Ok(CoordVector { tri, values })
    }

    /// Skip the positivity check; used to build deliberately invalid data.
    pub fn new_unchecked(tri: IdealTriangulation, values: Vec<Q>) -> Self {
        CoordVector { tri, values }
    }

    pub fn all_ones(tri: IdealTriangulation) -> Self {
        let n = 4 * tri.n_triangles();
        CoordVector { tri, values: vec![qi(1); n] }
    }

    /// Random positive rationals `p/q` with `1 <= p, q <= 9`.
    pub fn random<R: Rng + ?Sized>(tri: IdealTriangulation, rng: &mut R) -> Self {
        let n = 4 * tri.n_triangles();
        CoordVector { tri, values: (0..n).map(|_| random_positive(rng)).collect() }
    }

    pub fn triangulation(&self) -> &IdealTriangulation {
        &self.tri
    }
    pub fn values(&self) -> &[Q] {
        &self.values
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn triangle(&self, t: usize) -> &Q {
        &self.values[t]
    }
    pub fn edge(&self, s: usize) -> &Q {
        &self.values[self.tri.n_triangles() + s]
    }
    pub fn set_triangle(&mut self, t: usize, v: Q) {
        self.values[t] = v;
    }
    pub fn set_edge(&mut self, s: usize, v: Q) {
        let n = self.tri.n_triangles();
        self.values[n + s] = v;
    }
    /// Index of the edge value of slot `s` in the flat vector.
    pub fn edge_index(&self, s: usize) -> usize {
        self.tri.n_triangles() + s
    }
    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(crate::field::to_f64).collect()
    }

    /// Human label of flat index `i`: `t3` or `1.2`.
    pub fn label(&self, i: usize) -> String {
        let n = self.tri.n_triangles();
        if i < n {
            format!("t{i}")
        } else {
            slot_label(i - n)
        }
    }

    /// Coordinates of the opposite orientation: every value inverted.
    pub fn reverse_orientation(&self) -> CoordVector {
        CoordVector { tri: self.tri.clone(), values: reverse_values(&self.values) }
    }

    /// The same structure on the mirrored triangulation. Triangles keep
    /// their index, each oriented edge moves to the mirrored slot that has
    /// the same tail, and every value is inverted.
    pub fn mirrored(&self) -> CoordVector {
        let n = self.tri.n_triangles();
        let mut values = reverse_values(&self.values);
        for s in 0..self.tri.n_slots() {
            values[n + mirror_slot(self.tri.partner(s))] = self.values[n + s].recip();
        }
        CoordVector { tri: self.tri.mirror(), values }
    }

    /// Coordinates of the dual structure.
    pub fn dualize(&self) -> Result<CoordVector> {
        if let Some(s) = (0..self.tri.n_slots()).find(|&s| self.tri.is_self_glued(s)) {
            return Err(Error::SelfGluedEdge(s));
        }
        Ok(CoordVector { tri: self.tri.clone(), values: dualize_values(&self.tri, &self.values) })
    }

    /// Flip the edge through slot `s`; returns the new coordinates on the
    /// flipped triangulation and the slot correspondence.
    pub fn flip(&self, s: usize) -> Result<(CoordVector, FlipRelabel)> {
        let (nt, r) = self.tri.flip_combinatorial(s)?;
        let values = flip_values(&self.tri, &r, &self.values);
        Ok((CoordVector { tri: nt, values }, r))
    }

    /// Parreau parameter of the oriented edge `s`, using the triangle on
    /// which `s` is anti-coherent.
    pub fn parreau_s(&self, s: usize) -> Q {
        let t = self.triangle(tri(self.tri.partner(s))).clone();
        self.edge(s).clone() * t.clone() / (qi(1) + t)
    }

    /// Renumber by a slot permutation.
    pub fn relabel(&self, r: &Relabeling) -> CoordVector {
        CoordVector { tri: self.tri.relabel(r), values: relabel_values(&self.tri, r, &self.values) }
    }

    /// Same structure in the canonical numbering: the breadth-first
    /// renumbering whose (pairing, values) encoding is smallest.
    pub fn canonical(&self) -> CoordVector {
        self.relabel(&self.canonical_relabeling())
    }

    /// The BFS relabeling giving the least (partners, values) pair.
    pub fn canonical_relabeling(&self) -> Relabeling {
        let mut best: Option<(Relabeling, CoordVector)> = None;
        for root in 0..self.tri.n_slots() {
            let r = self.tri.bfs_relabeling(root);
            let c = self.relabel(&r);
            let better = match &best {
                None => true,
                Some((_, b)) => (c.tri.partners(), &c.values) < (b.tri.partners(), &b.values),
            };
            if better {
                best = Some((r, c));
            }
        }
        best.expect("at least one slot").0
    }
}

/// Values after renumbering slots by `r`.
pub fn relabel_values<F: Field>(tr: &IdealTriangulation, r: &Relabeling, v: &[F]) -> Vec<F> {
    let n = tr.n_triangles();
    let mut out = v.to_vec();
    for t in 0..n {
        out[r.triangle(t)] = v[t].clone();
    }
    for s in 0..tr.n_slots() {
        out[n + r.map[s]] = v[n + s].clone();
    }
    out
}

pub fn reverse_values<F: Field>(v: &[F]) -> Vec<F> {
    v.iter().map(|x| x.recip()).collect()
}

/// Duality in coordinates: for slot `s` read as `0 -> 2` inside its own
/// triangle `(0,2,3)` with the partner inside `(0,1,2)`, the value at the
/// partner becomes `e02 t012 (t023 + 1) / (t012 + 1)`; triangles invert.
pub fn dualize_values<F: Field>(tr: &IdealTriangulation, v: &[F]) -> Vec<F> {
    let n = tr.n_triangles();
    let one = F::one();
    let mut out = v.to_vec();
    for t in 0..n {
        out[t] = v[t].recip();
    }
    for s in 0..tr.n_slots() {
        let p = tr.partner(s);
        let t023 = v[tri(s)].clone();
        let t012 = v[tri(p)].clone();
        out[n + p] = v[n + s].clone() * t012.clone() * (t023 + one.clone()) / (t012 + one.clone());
    }
    out
}

/// Coordinates after the flip described by `r`, in the new numbering.
pub fn flip_values<F: Field>(old: &IdealTriangulation, r: &FlipRelabel, v: &[F]) -> Vec<F> {
    let n = old.n_triangles();
    let one = F::one();
    let sq = SquareSlots::new(old, r.flipped);
    let e = |s: usize| v[n + s].clone();
    let (e02, e20) = (e(sq.s02), e(sq.s20));
    let (t023, t012) = (v[r.t].clone(), v[r.tp].clone());
    let (a, b) = square_polys(&t012, &t023, &e02, &e20);
    let e02p = e02.clone() + one.clone();
    let e20p = e20.clone() + one.clone();
    // boundary edges pick up a factor per occurrence; when two sides of the
    // square are glued together one edge receives two factors
    let factors = [
        (sq.s01, e02.clone() / e02p.clone()),
        (old.partner(sq.s01), e02p.clone() * t012.clone() * e20.clone() / b.clone()),
        (sq.s12, b.clone() / e20p.clone()),
        (old.partner(sq.s12), e20p.clone()),
        (sq.s23, e20.clone() / e20p.clone()),
        (old.partner(sq.s23), e02.clone() * t023.clone() * e20p.clone() / a.clone()),
        (sq.s30, a.clone() / e02p.clone()),
        (old.partner(sq.s30), e02p.clone()),
    ];
    let mut edges: Vec<F> = v[n..].to_vec();
    for (s, f) in factors {
        edges[s] = edges[s].clone() * f;
    }
    let mut out = v.to_vec();
    for (s, val) in edges.into_iter().enumerate() {
        if let Some(ns) = r.map[s] {
            out[n + ns] = val;
        }
    }
    out[n + r.d13] = e20p.clone() / (e02p.clone() * t012.clone() * e20);
    out[n + r.d31] = e02p / (e02 * t023.clone() * e20p);
    out[r.t] = t023 * b.clone() / a.clone();
    out[r.tp] = t012 * a / b;
    out
}
