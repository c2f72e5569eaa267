//! Bundled example surfaces, coordinate presets and curves.
//!
//! Names of coordinates follow the usual vertex-label convention: `t132`
//! is the triangle with corners labelled 1, 3, 2 and `e13` the oriented
//! edge from the corner labelled 1 to the one labelled 3, whose value is
//! the edge ratio measured at its tail.

use crate::coords::CoordVector;
use crate::field::{q, qi};
use crate::holonomy::{peripheral_exponents, solve_monomials};
use crate::poisson::AnnotatedCurvePair;
use crate::surface::{slot, DualPath, IdealTriangulation};
use num::BigRational;
use std::collections::BTreeMap;

type Q = BigRational;

/// A triangulated surface with human-readable names.
#[derive(Clone, Debug)]
pub struct NamedSurface {
    pub name: &'static str,
    pub tri: IdealTriangulation,
    /// Coordinate name -> flat coordinate index.
    pub coords: BTreeMap<String, usize>,
    /// Vertex label -> vertex id.
    pub vertices: BTreeMap<String, usize>,
}

impl NamedSurface {
    /// Flat index of a named coordinate; panics on unknown names.
    pub fn idx(&self, name: &str) -> usize {
        *self.coords.get(name).unwrap_or_else(|| panic!("unknown coordinate {name}"))
    }

    pub fn vertex(&self, name: &str) -> usize {
        *self.vertices.get(name).unwrap_or_else(|| panic!("unknown vertex {name}"))
    }

    /// Exponent vector of a product of named coordinates, e.g.
    /// `[("e12", 1), ("t142", 2)]`.
    pub fn monomial(&self, factors: &[(&str, i64)]) -> Vec<i64> {
        let mut a = vec![0; 4 * self.tri.n_triangles()];
        for (n, k) in factors {
            a[self.idx(n)] += k;
        }
        a
    }

    /// Coordinates with the named entries set and the rest equal to 1.
    pub fn coords_from(&self, values: &[(&str, Q)]) -> CoordVector {
        let mut c = CoordVector::all_ones(self.tri.clone());
        let n = self.tri.n_triangles();
        for (name, v) in values {
            let i = self.idx(name);
            if i < n {
                c.set_triangle(i, v.clone());
            } else {
                c.set_edge(i - n, v.clone());
            }
        }
        c
    }
}

/// Build a surface from corner-labelled triangles and a list of glued
/// side pairs given by their corner labels.
fn from_corner_labels(
    name: &'static str,
    genus: u32,
    punctures: u32,
    tris: &[[&str; 3]],
    gluings: &[((&str, &str, usize), (&str, &str, usize))],
) -> NamedSurface {
    let find = |a: &str, b: &str, t: usize| -> usize {
        let k = (0..3).find(|&k| tris[t][k] == a && tris[t][(k + 1) % 3] == b).expect("side exists");
        slot(t, k)
    };
    let pairs: Vec<(usize, usize)> =
        gluings.iter().map(|((a, b, t), (c, d, u))| (find(a, b, *t), find(c, d, *u))).collect();
    let tri = IdealTriangulation::build_from_gluing(genus, punctures, tris.len(), &pairs).expect("valid example");
    let n = tris.len();
    let mut coords = BTreeMap::new();
    let mut vertices = BTreeMap::new();
    for (t, c) in tris.iter().enumerate() {
        coords.insert(format!("t{}{}{}", c[0], c[1], c[2]), t);
        for k in 0..3 {
            vertices.entry(c[k].to_string()).or_insert(tri.corner_vertex(t, k));
        }
    }
    // each side names its own slot, and its reversed labels name the partner
    let mut insert = |name: String, s: usize| {
        let prev = coords.insert(name.clone(), n + s);
        assert!(prev.is_none() || prev == Some(n + s), "conflicting name {name}");
    };
    for (t, c) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (c[k], c[(k + 1) % 3]);
            let s = slot(t, k);
            insert(format!("e{a}{b}"), s);
            insert(format!("e{b}{a}"), tri.partner(s));
        }
    }
    NamedSurface { name, tri, coords, vertices }
}

/// Once-punctured torus: two triangles `t132`, `t143` glued along all sides.
pub fn s11() -> NamedSurface {
    let tri = IdealTriangulation::build_from_gluing(1, 1, 2, &[(0, 5), (1, 3), (2, 4)]).expect("valid");
    let mut coords = BTreeMap::new();
    for (k, v) in [("t132", 0), ("t143", 1), ("e13", 2), ("e41", 3), ("e21", 4), ("e14", 5), ("e12", 6), ("e31", 7)] {
        coords.insert(k.to_string(), v);
    }
    let vertices = BTreeMap::from([("1".to_string(), 0)]);
    NamedSurface { name: "S11", tri, coords, vertices }
}

/// Thrice-punctured sphere with two self-folded triangles `t142`, `t243`.
/// Violates assumption (I).
pub fn s03() -> NamedSurface {
    let tri = IdealTriangulation::build_from_gluing(0, 3, 2, &[(0, 2), (4, 5), (1, 3)]).expect("valid");
    let mut coords = BTreeMap::new();
    for (k, v) in [("t142", 0), ("t243", 1), ("e12", 2), ("e42", 3), ("e21", 4), ("e24", 5), ("e23", 6), ("e32", 7)] {
        coords.insert(k.to_string(), v);
    }
    let vertices = BTreeMap::from([
        ("1".to_string(), tri.corner_vertex(0, 0)),
        ("2".to_string(), tri.corner_vertex(0, 2)),
        ("3".to_string(), tri.corner_vertex(1, 2)),
    ]);
    NamedSurface { name: "S03", tri, coords, vertices }
}

/// Thrice-punctured sphere as two triangles glued along their boundary.
pub fn s03_doubled() -> NamedSurface {
    from_corner_labels(
        "S03d",
        0,
        3,
        &[["1", "2", "3"], ["1", "3", "2"]],
        &[(("1", "2", 0), ("2", "1", 1)), (("2", "3", 0), ("3", "2", 1)), (("3", "1", 0), ("1", "3", 1))],
    )
}

/// Twice-punctured torus from a hexagon `1,6,5,4,3,2` cut into four
/// triangles; vertices `{1,3,5}` and `{2,4,6}`.
pub fn s12() -> NamedSurface {
    from_corner_labels(
        "S12",
        1,
        2,
        &[["1", "6", "2"], ["2", "6", "5"], ["2", "5", "3"], ["3", "5", "4"]],
        &[
            (("6", "2", 0), ("2", "6", 1)),
            (("5", "2", 1), ("2", "5", 2)),
            (("5", "3", 2), ("3", "5", 3)),
            (("1", "6", 0), ("4", "3", 3)),
            (("6", "5", 1), ("3", "2", 2)),
            (("5", "4", 3), ("2", "1", 0)),
        ],
    )
}

/// All bundled surfaces.
pub fn surfaces() -> Vec<NamedSurface> {
    vec![s11(), s03(), s03_doubled(), s12()]
}

/// A fixed list of distinct positive rationals, reused by the presets.
fn generic_values(len: usize) -> Vec<Q> {
    let base = [q(3, 2), q(2, 3), q(5, 4), q(7, 3), qi(2), q(3, 5), q(4, 7), q(9, 8), q(5, 2), q(6, 5), q(8, 3), q(2, 7), q(11, 6), q(3, 4), q(13, 9), q(7, 5)];
    (0..len).map(|i| base[i % base.len()].clone() * if i >= base.len() { q(5, 3) } else { qi(1) }).collect()
}

/// Named coordinate presets for a bundled surface.
pub fn presets(s: &NamedSurface) -> Vec<(&'static str, CoordVector)> {
    let tri = s.tri.clone();
    let generic = CoordVector::new(tri.clone(), generic_values(4 * tri.n_triangles())).expect("positive");
    let mut out = vec![("ones", CoordVector::all_ones(tri.clone())), ("generic", generic.clone())];
    match s.name {
        "S11" => {
            out.push((
                "teichmuller",
                s.coords_from(&[
                    ("e13", qi(2)),
                    ("e31", qi(2)),
                    ("e14", q(3, 4)),
                    ("e41", q(3, 4)),
                    ("e12", q(2, 3)),
                    ("e21", q(2, 3)),
                ]),
            ));
            let fa = solve_monomials(&generic, &[(0, qi(1), qi(1))]).expect("solvable");
            out.push(("finite-area", fa));
        }
        "S12" => {
            out.push(("teichmuller", s12_teichmuller(s)));
            let (v1, v2) = (s.vertex("1"), s.vertex("2"));
            let g = solve_monomials(&generic, &[(v1, qi(2), qi(16)), (v2, qi(2), qi(16))]).expect("solvable");
            out.push(("gluable", g));
        }
        _ => {}
    }
    out
}

/// A symmetric, triangle-trivial point of S12 with unit outbound products.
fn s12_teichmuller(s: &NamedSurface) -> CoordVector {
    let tri = &s.tri;
    let edges = tri.edges();
    let v1 = s.vertex("1");
    // exponents k_e with sum k_e = 0 and sum k_e * (endpoints at v1) = 0
    let ends: Vec<i64> = edges.iter().map(|&e| (tri.tail(e) == v1) as i64 + (tri.head(e) == v1) as i64).collect();
    let mut best = None;
    'search: for code in 0..4usize.pow(edges.len() as u32) {
        let mut k = vec![0i64; edges.len()];
        let mut c = code;
        for x in k.iter_mut() {
            *x = (c % 4) as i64 - 1;
            c /= 4;
        }
        if k.iter().all(|&x| x == 0) || k.iter().filter(|&&x| x != 0).count() < 4 {
            continue;
        }
        let total: i64 = k.iter().sum();
        let at_v1: i64 = k.iter().zip(&ends).map(|(a, b)| a * b).sum();
        if total == 0 && at_v1 == 0 {
            best = Some(k);
            break 'search;
        }
    }
    let k = best.expect("solution exists");
    let mut c = CoordVector::all_ones(tri.clone());
    for (&e, &ke) in edges.iter().zip(&k) {
        let v = crate::holonomy::eval_monomial(&[qi(2)], &[ke]);
        c.set_edge(e, v.clone());
        c.set_edge(tri.partner(e), v);
    }
    c
}

/// Closed curves on S11: generators `a`, `b` and some words in them.
pub fn s11_curves() -> Vec<(&'static str, DualPath)> {
    let s = s11();
    let tr = &s.tri;
    let a = DualPath::closed(tr, vec![1, 4]).expect("closed");
    let b = DualPath::closed(tr, vec![0, 3]).expect("closed");
    // concatenate raw exits, reducing only once so the base triangle stays put
    let word = |w: &str| -> DualPath {
        let mut exits = Vec::new();
        for ch in w.chars() {
            let g = match ch {
                'a' => a.clone(),
                'b' => b.clone(),
                'A' => a.reversed(tr),
                'B' => b.reversed(tr),
                _ => unreachable!(),
            };
            exits.extend(g.exits);
        }
        DualPath::closed(tr, exits).expect("consistent").reduced(tr)
    };
    vec![
        ("a", word("a")),
        ("b", word("b")),
        ("ab", word("ab")),
        ("abb", word("abb")),
        ("aab", word("aab")),
        ("aabab", word("aabab")),
        ("aaabb", word("aaabb")),
        ("commutator", word("abAB")),
        ("peripheral", tr.peripheral_path(0).expect("vertex")),
    ]
}

/// The three annotated curve pairs on S11 used by the compatibility check.
pub fn s11_pairs() -> Vec<(&'static str, AnnotatedCurvePair)> {
    let tr = s11().tri;
    let curves: BTreeMap<&str, DualPath> = s11_curves().into_iter().collect();
    [("a-abb", "a", "abb"), ("b-aaabb", "b", "aaabb"), ("abb-aabab", "abb", "aabab")]
        .into_iter()
        .map(|(name, x, y)| (name, AnnotatedCurvePair::annotate(&tr, curves[x].clone(), curves[y].clone())))
        .collect()
}

/// Peripheral exponent rows of a named vertex.
pub fn peripheral_rows(s: &NamedSurface, vertex: &str) -> (Vec<i64>, Vec<i64>) {
    peripheral_exponents(&s.tri, s.vertex(vertex)).expect("valid vertex")
}
