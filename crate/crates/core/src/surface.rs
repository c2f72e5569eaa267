//! Ideal triangulations stored as a pairing of triangle sides.
//!
//! Slot `3t + k` is side `k` of triangle `t`, running from corner `k` to
//! corner `k + 1` (corners anticlockwise). A slot doubles as the oriented
//! surface edge that is coherent with its triangle; the partner slot is
//! the same edge with the opposite orientation. Ideal vertices are derived
//! from the pairing and never stored independently.

use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Triangle owning a slot.
pub fn tri(s: usize) -> usize {
    s / 3
}

/// Side index of a slot inside its triangle.
pub fn side(s: usize) -> usize {
    s % 3
}

/// Slot of side `k` of triangle `t`.
pub fn slot(t: usize, k: usize) -> usize {
    3 * t + k % 3
}

/// Next side anticlockwise in the same triangle.
pub fn next(s: usize) -> usize {
    slot(tri(s), side(s) + 1)
}

/// Previous side in the same triangle.
pub fn prev(s: usize) -> usize {
    slot(tri(s), side(s) + 2)
}

/// Slot of the mirrored triangulation lying on the same side as `s`.
pub fn mirror_slot(s: usize) -> usize {
    slot(tri(s), 2 - side(s))
}

/// Text label `t.k` of a slot.
pub fn slot_label(s: usize) -> String {
    format!("{}.{}", tri(s), side(s))
}

/// Parse a `t.k` slot label.
pub fn parse_slot_label(s: &str) -> Option<usize> {
    let (a, b) = s.trim().split_once('.')?;
    let t: usize = a.parse().ok()?;
    let k: usize = b.parse().ok()?;
    (k < 3).then(|| slot(t, k))
}

/// A punctured surface with a fixed ideal triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    genus: u32,
    punctures: u32,
    partner: Vec<usize>,
    corner_vertex: Vec<usize>,
    n_vertices: usize,
}

/// One entry of the cyclic link of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkEntry {
    /// Oriented edge leaving the vertex.
    pub edge: usize,
    /// Triangle that follows this edge anticlockwise around the vertex.
    pub triangle: usize,
}

impl IdealTriangulation {
    /// Build and validate a triangulation from a side pairing.
    pub fn build_from_gluing(
        genus: u32,
        punctures: u32,
        n_triangles: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let expected = 2 * (2 * genus as i64 - 2 + punctures as i64);
        if n_triangles as i64 != expected {
            return Err(Error::EulerMismatch { found: n_triangles, expected });
        }
        let n = 3 * n_triangles;
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::InvalidIndex(x));
                }
            }
            if a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                let bad = if partner[a] != usize::MAX || a == b { a } else { b };
                return Err(Error::DuplicateSide(slot_label(bad)));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(s) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::UnpairedSide(slot_label(s)));
        }
        let t = Self::from_partner(genus, punctures, partner);
        if !t.is_connected() {
            return Err(Error::Disconnected);
        }
        if t.n_vertices != punctures as usize {
            return Err(Error::VertexCountMismatch { found: t.n_vertices, expected: punctures as usize });
        }
        Ok(t)
    }

    /// The same triangulation seen with the opposite orientation: every
    /// triangle lists its corners in reverse, side `k` becoming side `2 - k`.
    pub fn mirror(&self) -> IdealTriangulation {
        let partner = (0..self.n_slots()).map(|s| mirror_slot(self.partner[mirror_slot(s)])).collect();
        Self::from_partner(self.genus, self.punctures, partner)
    }

    /// Build from a full partner table, deriving vertices; no validation.
    pub(crate) fn from_partner(genus: u32, punctures: u32, partner: Vec<usize>) -> Self {
        let n = partner.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        // tail of a slot is the head of its partner
        for s in 0..n {
            let a = find(&mut parent, s);
            let b = find(&mut parent, next(partner[s]));
            parent[a] = b;
        }
        let mut ids = vec![usize::MAX; n];
        let mut corner_vertex = vec![0; n];
        let mut n_vertices = 0;
        for c in 0..n {
            let r = find(&mut parent, c);
            if ids[r] == usize::MAX {
                ids[r] = n_vertices;
                n_vertices += 1;
            }
            corner_vertex[c] = ids[r];
        }
        IdealTriangulation { genus, punctures, partner, corner_vertex, n_vertices }
    }

    fn is_connected(&self) -> bool {
        let nt = self.n_triangles();
        if nt == 0 {
            return false;
        }
        let mut seen = vec![false; nt];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for k in 0..3 {
                let u = tri(self.partner[slot(t, k)]);
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }
    pub fn punctures(&self) -> u32 {
        self.punctures
    }
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }
    pub fn n_triangles(&self) -> usize {
        self.partner.len() / 3
    }
    /// Number of oriented edges (= number of slots).
    pub fn n_slots(&self) -> usize {
        self.partner.len()
    }
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
    /// Reverse of an oriented edge.
    pub fn partner(&self, s: usize) -> usize {
        self.partner[s]
    }
    pub fn partners(&self) -> &[usize] {
        &self.partner
    }
    /// Vertex at corner `k` of triangle `t`.
    pub fn corner_vertex(&self, t: usize, k: usize) -> usize {
        self.corner_vertex[slot(t, k)]
    }
    pub fn tail(&self, s: usize) -> usize {
        self.corner_vertex[s]
    }
    pub fn head(&self, s: usize) -> usize {
        self.corner_vertex[next(s)]
    }

    /// One representative slot (the smaller one) per unoriented edge.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.n_slots()).filter(|&s| s < self.partner[s]).collect()
    }

    /// Side pairs `(s, partner s)` with `s < partner s`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().map(|s| (s, self.partner[s])).collect()
    }

    /// True if both sides of the edge through `s` lie in one triangle.
    pub fn is_self_glued(&self, s: usize) -> bool {
        tri(s) == tri(self.partner[s])
    }

    /// Assumption (I): every edge borders two distinct triangles.
    pub fn validate_distinct_faces(&self) -> bool {
        (0..self.n_slots()).all(|s| !self.is_self_glued(s))
    }

    /// Oriented edges leaving `v`, each with the triangle following it,
    /// in anticlockwise order around `v`.
    pub fn vertex_link(&self, v: usize) -> Result<Vec<LinkEntry>> {
        if v >= self.n_vertices {
            return Err(Error::InvalidIndex(v));
        }
        let start = (0..self.n_slots()).find(|&s| self.tail(s) == v).expect("vertex has a corner");
        let mut out = Vec::new();
        let mut s = start;
        loop {
            out.push(LinkEntry { edge: s, triangle: tri(s) });
            s = self.partner[prev(s)];
            if s == start {
                break;
            }
        }
        Ok(out)
    }

    /// Closed dual path once around `v` with every turn equal to `sign`.
    ///
    /// Sign -1 follows the link order and exits through edges arriving at
    /// `v`; sign +1 runs the other way and exits through edges leaving `v`.
    pub fn peripheral_path_signed(&self, v: usize, sign: i8) -> Result<DualPath> {
        let link = self.vertex_link(v)?;
        let exits: Vec<usize> = if sign < 0 {
            link.iter().map(|e| prev(e.edge)).collect()
        } else {
            // walk outgoing slots: next exit is next(partner(s))
            let start = link[0].edge;
            let mut v = vec![start];
            let mut s = next(self.partner[start]);
            while s != start {
                v.push(s);
                s = next(self.partner[s]);
            }
            v
        };
        DualPath::closed(self, exits)
    }

    /// Peripheral path with negative turns, following the link order.
    pub fn peripheral_path(&self, v: usize) -> Result<DualPath> {
        self.peripheral_path_signed(v, -1)
    }

    /// Flip the edge through slot `s`.
    ///
    /// Writing `s` as `0 -> 2` in the square `(0,1,2,3)`, with triangle
    /// `(0,2,3)` owning `s` and `(0,1,2)` owning its partner, the triangle
    /// of `s` becomes `(1,3,0)` and the other becomes `(1,2,3)`.
    pub fn flip_combinatorial(&self, s: usize) -> Result<(IdealTriangulation, FlipRelabel)> {
        if s >= self.n_slots() {
            return Err(Error::InvalidIndex(s));
        }
        if self.is_self_glued(s) {
            return Err(Error::SelfGluedEdge(s));
        }
        let p = self.partner[s];
        let (t, tp) = (tri(s), tri(p));
        let sq = SquareSlots::new(self, s);
        let d13 = slot(t, 0);
        let d31 = slot(tp, 2);
        let mut map: Vec<Option<usize>> = (0..self.n_slots()).map(Some).collect();
        for k in 0..3 {
            map[slot(t, k)] = None;
            map[slot(tp, k)] = None;
        }
        map[sq.s30] = Some(slot(t, 1));
        map[sq.s01] = Some(slot(t, 2));
        map[sq.s12] = Some(slot(tp, 0));
        map[sq.s23] = Some(slot(tp, 1));
        let mut partner = vec![usize::MAX; self.n_slots()];
        for x in 0..self.n_slots() {
            if x == s || x == p {
                continue;
            }
            let (a, b) = (map[x].unwrap(), map[self.partner[x]].unwrap());
            partner[a] = b;
        }
        partner[d13] = d31;
        partner[d31] = d13;
        let nt = Self::from_partner(self.genus, self.punctures, partner);
        Ok((nt, FlipRelabel { flipped: s, map, d13, d31, t, tp }))
    }

    /// Repeatedly flip the third edge of a triangle with a self-glued pair
    /// of sides until assumption (I) holds.
    pub fn regularize(&self) -> Result<(IdealTriangulation, Vec<FlipRelabel>)> {
        let mut cur = self.clone();
        let mut steps = Vec::new();
        for _ in 0..4 * self.n_slots() + 4 {
            let bad = (0..cur.n_slots()).find(|&s| cur.is_self_glued(s));
            let Some(b) = bad else {
                return Ok((cur, steps));
            };
            let t = tri(b);
            let third = (0..3)
                .map(|k| slot(t, k))
                .find(|&x| !cur.is_self_glued(x))
                .ok_or(Error::SelfGluedEdge(b))?;
            let (nt, r) = cur.flip_combinatorial(third)?;
            cur = nt;
            steps.push(r);
        }
        Err(Error::AssumptionIViolated)
    }

    /// Renumber slots by a permutation (old slot -> new slot) that maps
    /// triangles to triangles and preserves cyclic side order.
    pub fn relabel(&self, r: &Relabeling) -> IdealTriangulation {
        let mut partner = vec![0; self.n_slots()];
        for s in 0..self.n_slots() {
            partner[r.map[s]] = r.map[self.partner[s]];
        }
        Self::from_partner(self.genus, self.punctures, partner)
    }

    /// Breadth-first renumbering rooted at `root`: the root triangle
    /// becomes triangle 0 with `root` as side 0, and every newly reached
    /// triangle is rotated so that the entering side becomes side 0.
    pub fn bfs_relabeling(&self, root: usize) -> Relabeling {
        let nt = self.n_triangles();
        let mut new_index = vec![usize::MAX; nt];
        let mut rot = vec![0usize; nt];
        let mut order = VecDeque::new();
        new_index[tri(root)] = 0;
        rot[tri(root)] = side(root);
        order.push_back(tri(root));
        let mut count = 1;
        while let Some(t) = order.pop_front() {
            for j in 0..3 {
                let s = slot(t, rot[t] + j);
                let ps = self.partner[s];
                let u = tri(ps);
                if new_index[u] == usize::MAX {
                    new_index[u] = count;
                    count += 1;
                    rot[u] = side(ps);
                    order.push_back(u);
                }
            }
        }
        let map = (0..self.n_slots())
            .map(|s| {
                let t = tri(s);
                slot(new_index[t], (side(s) + 3 - rot[t]) % 3)
            })
            .collect();
        Relabeling { map }
    }

    /// Check that `r` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &IdealTriangulation, r: &Relabeling) -> bool {
        if self.n_slots() != other.n_slots() || r.map.len() != self.n_slots() {
            return false;
        }
        (0..self.n_slots()).all(|s| {
            other.partner(r.map[s]) == r.map[self.partner[s]] && r.map[next(s)] == next(r.map[s])
        })
    }
}

/// The four boundary slots of the square around a flippable edge.
///
/// With the flipped slot `s` read as `0 -> 2`, `sAB` is the slot running
/// from square corner A to square corner B.
#[derive(Clone, Copy, Debug)]
pub struct SquareSlots {
    pub s02: usize,
    pub s20: usize,
    pub s01: usize,
    pub s12: usize,
    pub s23: usize,
    pub s30: usize,
}

impl SquareSlots {
    pub fn new(tr: &IdealTriangulation, s: usize) -> Self {
        let p = tr.partner(s);
        SquareSlots { s02: s, s20: p, s01: next(p), s12: prev(p), s23: next(s), s30: prev(s) }
    }
}

/// Slot correspondence produced by a flip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipRelabel {
    /// The slot that was flipped (old numbering).
    pub flipped: usize,
    /// Old slot -> new slot; `None` on the two sides of the removed edge.
    pub map: Vec<Option<usize>>,
    /// New diagonal `1 -> 3`, owned by the old triangle of the flipped slot.
    pub d13: usize,
    /// New diagonal `3 -> 1`.
    pub d31: usize,
    pub t: usize,
    pub tp: usize,
}

impl FlipRelabel {
    pub fn map_slot(&self, s: usize) -> Option<usize> {
        self.map[s]
    }

    /// Transport a closed dual path across the flip.
    pub fn transport_path(&self, new: &IdealTriangulation, path: &DualPath) -> Result<DualPath> {
        let q: Vec<usize> = path.exits.iter().filter_map(|&x| self.map[x]).collect();
        if !path.closed {
            return Err(Error::InconsistentPath("only closed paths can be transported".into()));
        }
        let mut out = Vec::with_capacity(q.len() + 4);
        for (i, &a) in q.iter().enumerate() {
            let b = q[(i + 1) % q.len()];
            out.push(a);
            let ta = tri(new.partner(a));
            if ta != tri(b) {
                out.push(if ta == self.t { self.d13 } else { self.d31 });
            }
        }
        DualPath::closed(new, out).map(|p| p.reduced(new))
    }

    /// Compose with a following flip into a full slot permutation, filling
    /// in the sides of removed edges from the triangles they bound.
    pub fn compose(&self, second: &FlipRelabel) -> Relabeling {
        let n = self.map.len();
        let mut m: Vec<Option<usize>> =
            (0..n).map(|s| self.map[s].and_then(|x| second.map[x])).collect();
        for _ in 0..3 {
            for s in 0..n {
                if m[s].is_none() {
                    if let Some(y) = m[next(s)] {
                        m[s] = Some(prev(y));
                    } else if let Some(y) = m[prev(s)] {
                        m[s] = Some(next(y));
                    }
                }
            }
        }
        Relabeling { map: m.into_iter().map(|x| x.expect("every triangle keeps a mapped side")).collect() }
    }
}

/// A slot permutation respecting triangles and cyclic side order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub map: Vec<usize>,
}

impl Relabeling {
    pub fn identity(n_slots: usize) -> Self {
        Relabeling { map: (0..n_slots).collect() }
    }
    /// New triangle index of old triangle `t`.
    pub fn triangle(&self, t: usize) -> usize {
        tri(self.map[slot(t, 0)])
    }
    pub fn inverse(&self) -> Relabeling {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Relabeling { map: inv }
    }
}

/// A curve in the dual graph of the triangulation.
///
/// Stored as the sequence of slots through which the curve leaves each
/// triangle; turns are derived from consecutive crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPath {
    pub exits: Vec<usize>,
    pub closed: bool,
}

/// One step of a dual path, in reading order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Turn inside a triangle; `sign` is +1, -1, or 0 for a U-turn.
    Turn { triangle: usize, sign: i8 },
    /// Crossing of an oriented edge, given by the slot being exited.
    Cross { edge: usize },
}

impl DualPath {
    /// The constant (identity) loop.
    pub fn empty() -> Self {
        DualPath { exits: Vec::new(), closed: true }
    }

    /// A closed path through the given exits; checks consecutive steps.
    pub fn closed(tr: &IdealTriangulation, exits: Vec<usize>) -> Result<Self> {
        for (i, &s) in exits.iter().enumerate() {
            if s >= tr.n_slots() {
                return Err(Error::InvalidIndex(s));
            }
            let before = exits[(i + exits.len() - 1) % exits.len()];
            if tri(tr.partner(before)) != tri(s) {
                return Err(Error::InconsistentPath(format!(
                    "crossing {} does not lead into the triangle of {}",
                    slot_label(before),
                    slot_label(s)
                )));
            }
        }
        Ok(DualPath { exits, closed: true })
    }

    /// An open path starting in the triangle of `exits[0]`.
    pub fn open(tr: &IdealTriangulation, exits: Vec<usize>) -> Result<Self> {
        for w in exits.windows(2) {
            if tri(tr.partner(w[0])) != tri(w[1]) {
                return Err(Error::InconsistentPath(format!(
                    "crossing {} does not lead into the triangle of {}",
                    slot_label(w[0]),
                    slot_label(w[1])
                )));
            }
        }
        if exits.iter().any(|&s| s >= tr.n_slots()) {
            return Err(Error::InconsistentPath("slot out of range".into()));
        }
        Ok(DualPath { exits, closed: false })
    }

    pub fn len(&self) -> usize {
        self.exits.len()
    }
    pub fn is_empty(&self) -> bool {
        self.exits.is_empty()
    }

    /// Turn sign inside the triangle entered through `entry` and left
    /// through `exit`: +1, -1, or 0 for a U-turn.
    pub fn turn(entry: usize, exit: usize) -> i8 {
        match (side(exit) + 3 - side(entry)) % 3 {
            1 => 1,
            2 => -1,
            _ => 0,
        }
    }

    /// Turn signs; for closed paths entry `i` is the turn before exit `i`,
    /// for open paths entry `i` is the turn before exit `i + 1`.
    pub fn turns(&self, tr: &IdealTriangulation) -> Vec<i8> {
        let m = self.exits.len();
        if self.closed {
            (0..m).map(|i| Self::turn(tr.partner(self.exits[(i + m - 1) % m]), self.exits[i])).collect()
        } else {
            (1..m).map(|i| Self::turn(tr.partner(self.exits[i - 1]), self.exits[i])).collect()
        }
    }

    pub fn steps(&self, tr: &IdealTriangulation) -> Vec<Step> {
        let signs = self.turns(tr);
        let mut out = Vec::new();
        for (i, &s) in self.exits.iter().enumerate() {
            if self.closed {
                out.push(Step::Turn { triangle: tri(s), sign: signs[i] });
            } else if i > 0 {
                out.push(Step::Turn { triangle: tri(s), sign: signs[i - 1] });
            }
            out.push(Step::Cross { edge: s });
        }
        out
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self, tr: &IdealTriangulation) -> DualPath {
        DualPath { exits: self.exits.iter().rev().map(|&s| tr.partner(s)).collect(), closed: self.closed }
    }

    /// Cyclically remove U-turns (exit immediately through the entry edge).
    pub fn reduced(&self, tr: &IdealTriangulation) -> DualPath {
        let mut st: Vec<usize> = Vec::with_capacity(self.exits.len());
        for &s in &self.exits {
            if st.last().map(|&l| tr.partner(l) == s).unwrap_or(false) {
                st.pop();
            } else {
                st.push(s);
            }
        }
        if self.closed {
            let mut lo = 0;
            let mut hi = st.len();
            while hi - lo >= 2 && tr.partner(st[hi - 1]) == st[lo] {
                lo += 1;
                hi -= 1;
            }
            st = st[lo..hi].to_vec();
        }
        DualPath { exits: st, closed: self.closed }
    }

    /// Cyclic rotation starting at exit `i`.
    pub fn rotated(&self, i: usize) -> DualPath {
        let m = self.exits.len();
        if m == 0 {
            return self.clone();
        }
        let mut e = self.exits[i % m..].to_vec();
        e.extend_from_slice(&self.exits[..i % m]);
        DualPath { exits: e, closed: self.closed }
    }

    /// Loop product: `self` followed by `other`, both closed and based in
    /// the triangle of their first exit (which must coincide); reduced.
    pub fn concat(&self, tr: &IdealTriangulation, other: &DualPath) -> Result<DualPath> {
        let mut e = self.exits.clone();
        e.extend_from_slice(&other.exits);
        Ok(DualPath::closed(tr, e)?.reduced(tr))
    }

    /// Token form, e.g. `T+ t0 E 0.1 T- t1 E 1.2`.
    pub fn to_tokens(&self, tr: &IdealTriangulation) -> String {
        let mut out = Vec::new();
        for st in self.steps(tr) {
            match st {
                Step::Turn { triangle, sign } => {
                    let s = match sign {
                        1 => "T+",
                        -1 => "T-",
                        _ => "T0",
                    };
                    out.push(format!("{s} t{triangle}"));
                }
                Step::Cross { edge } => out.push(format!("E {}", slot_label(edge))),
            }
        }
        out.join(" ")
    }

    /// Parse the token form. A path that starts with a turn is closed; one
    /// that starts with a crossing is open; the empty string is the
    /// identity loop. Stated turns must agree with the crossings.
    pub fn parse_tokens(tr: &IdealTriangulation, text: &str) -> Result<DualPath> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.is_empty() {
            return Ok(DualPath::empty());
        }
        let closed = toks[0].starts_with('T');
        let mut exits = Vec::new();
        let mut turns: Vec<(usize, i8, usize)> = Vec::new();
        let mut i = 0;
        while i < toks.len() {
            let tok = toks[i];
            let arg = toks
                .get(i + 1)
                .ok_or_else(|| Error::Parse(format!("token `{tok}` at position {i} lacks an argument")))?;
            match tok {
                "E" => {
                    let s = parse_slot_label(arg)
                        .filter(|&s| s < tr.n_slots())
                        .ok_or_else(|| Error::Parse(format!("bad edge `{arg}` at position {}", i + 1)))?;
                    exits.push(s);
                }
                "T+" | "T-" | "T0" => {
                    let t: usize = arg
                        .strip_prefix('t')
                        .and_then(|x| x.parse().ok())
                        .filter(|&t| t < tr.n_triangles())
                        .ok_or_else(|| Error::Parse(format!("bad triangle `{arg}` at position {}", i + 1)))?;
                    let sign = match tok {
                        "T+" => 1,
                        "T-" => -1,
                        _ => 0,
                    };
                    turns.push((t, sign, exits.len()));
                }
                _ => return Err(Error::Parse(format!("unknown token `{tok}` at position {i}"))),
            }
            i += 2;
        }
        let path = if closed { DualPath::closed(tr, exits)? } else { DualPath::open(tr, exits)? };
        let expected: Vec<(usize, i8, usize)> = path
            .steps(tr)
            .iter()
            .scan(0usize, |crossed, st| {
                Some(match *st {
                    Step::Turn { triangle, sign } => Some((triangle, sign, *crossed)),
                    Step::Cross { .. } => {
                        *crossed += 1;
                        None
                    }
                })
            })
            .flatten()
            .collect();
        if expected != turns {
            return Err(Error::InconsistentPath(format!(
                "stated turns do not match the crossings; expected `{}`",
                path.to_tokens(tr)
            )));
        }
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn euler_mismatch() {
        let e = IdealTriangulation::build_from_gluing(1, 1, 3, &[(0, 5), (1, 4), (2, 3), (6, 7)]);
        assert_eq!(e, Err(Error::EulerMismatch { found: 3, expected: 2 }));
    }

    #[test]
    fn unpaired_side() {
        let e = IdealTriangulation::build_from_gluing(1, 1, 2, &[(0, 5), (1, 4)]);
        assert!(matches!(e, Err(Error::UnpairedSide(_))));
    }

    #[test]
    fn vertex_mismatch() {
        // the doubled triangle has three vertices, not one
        let e = IdealTriangulation::build_from_gluing(1, 1, 2, &[(0, 5), (1, 4), (2, 3)]);
        assert!(matches!(e, Err(Error::VertexCountMismatch { found: 3, expected: 1 })));
        let e = IdealTriangulation::build_from_gluing(0, 3, 2, &[(0, 5), (1, 3), (2, 4)]);
        assert!(matches!(e, Err(Error::VertexCountMismatch { found: 1, expected: 3 })));
    }

    #[test]
    fn reduce_and_reverse() {
        let s = corpus::s11().tri;
        let p = DualPath::closed(&s, vec![1, 4, 0, 3]).unwrap().reduced(&s);
        assert_eq!(p.exits, vec![4, 0]);
        let r = p.reversed(&s);
        assert_eq!(r.reversed(&s), p);
    }

    #[test]
    fn bfs_relabeling_is_isomorphism() {
        let s = corpus::s12().tri;
        for root in 0..s.n_slots() {
            let r = s.bfs_relabeling(root);
            let t = s.relabel(&r);
            assert!(s.is_isomorphism(&t, &r));
        }
    }
}
