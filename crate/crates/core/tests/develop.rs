mod common;

use common::*;
use fgcoords::coords::CoordVector;
use fgcoords::corpus;
use fgcoords::develop::*;
use fgcoords::error::Error;
use fgcoords::field::qi;
use fgcoords::holonomy::{j_invariants, monodromy_of_path};

fn preset(name: &str, s: &corpus::NamedSurface) -> CoordVector {
    corpus::presets(s).into_iter().find(|(n, _)| *n == name).unwrap().1
}

#[test]
fn tile_counts() {
    let s = corpus::s11();
    let c = CoordVector::all_ones(s.tri.clone());
    assert_eq!(develop(&c, 0).unwrap().tiles.len(), 1);
    assert_eq!(develop(&c, 1).unwrap().tiles.len(), 4);
    let t = develop(&c, 3).unwrap();
    assert_eq!(t.tiles.len(), 1 + 3 + 6 + 12);
    assert_eq!(t.adjacency.len(), t.tiles.len() - 1);
    assert_eq!(t.used_vertex_ids().len(), t.tiles.len() + 2);
    assert_eq!(t.truncated(1).tiles.len(), 4);
}

#[test]
fn developed_ratios_reproduce_coordinates() {
    let mut r = rng(30);
    for ns in corpus::surfaces() {
        let c = CoordVector::random(ns.tri.clone(), &mut r);
        let t = develop(&c, 3).unwrap();
        assert!(t.ratios_match(&c), "{}", ns.name);
        let mut other = c.clone();
        other.set_triangle(0, c.triangle(0).clone() + qi(1));
        assert!(!t.ratios_match(&other));
    }
}

#[test]
fn developed_region_is_convex() {
    let mut r = rng(31);
    for ns in corpus::surfaces() {
        for _ in 0..3 {
            let c = CoordVector::random(ns.tri.clone(), &mut r);
            assert!(convexity_check(&develop(&c, 3).unwrap()).unwrap(), "{}", ns.name);
        }
    }
    // a vertex moved to the wrong side of its edge
    let s = corpus::s11();
    let mut t = develop(&CoordVector::all_ones(s.tri.clone()), 2).unwrap();
    let id = t.tiles[1].vertex_ids.iter().copied().find(|&i| i > 2).unwrap();
    t.points[id] = [qi(1), qi(1), qi(3)];
    assert!(!convexity_check(&t).unwrap());
    // negative edge values break positivity of the developed tiles
    let mut v = CoordVector::all_ones(s.tri.clone()).values().to_vec();
    v[2] = qi(-3);
    let bad = CoordVector::new_unchecked(s.tri.clone(), v);
    match develop(&bad, 2) {
        Ok(t) => assert!(!matches!(convexity_check(&t), Ok(true))),
        Err(_) => {}
    }
}

#[test]
fn conic_criterion() {
    let s = corpus::s11();
    let c = preset("teichmuller", &s);
    let r = conic_residual(&develop(&c, 3).unwrap()).unwrap();
    assert!(r < 1e-10, "{r}");
    let mut d = c.clone();
    d.set_triangle(0, qi(2));
    let r = conic_residual(&develop(&d, 3).unwrap()).unwrap();
    assert!(r > 1e-3, "{r}");
    let ones = CoordVector::all_ones(s.tri.clone());
    assert!(conic_residual(&develop(&ones, 3).unwrap()).unwrap() < 1e-10);
    let s12 = corpus::s12();
    assert!(conic_residual(&develop(&preset("teichmuller", &s12), 2).unwrap()).unwrap() < 1e-10);
    assert!(matches!(conic_residual(&develop(&ones, 0).unwrap()), Err(Error::TooFewVertices(3))));
}

#[test]
fn depth_and_size_limits() {
    let s = corpus::s11();
    let c = CoordVector::all_ones(s.tri.clone());
    assert!(matches!(develop(&c, 7), Err(Error::DepthLimitExceeded(_))));
    let opts = DevelopOptions { max_bits: 8, ..Default::default() };
    assert!(matches!(develop_with(&preset("generic", &s), 5, &opts), Err(Error::DepthLimitExceeded(_))));
    let opts = DevelopOptions { seed_triangle: 9, ..Default::default() };
    assert!(matches!(develop_with(&c, 1, &opts), Err(Error::InvalidIndex(9))));
    let opts = DevelopOptions { seed_triangle: 1, ..Default::default() };
    let t = develop_with(&c, 2, &opts).unwrap();
    assert_eq!(t.tiles[0].triangle, 1);
    assert!(t.ratios_match(&c));
}

#[test]
fn svg_output() {
    let s = corpus::s11();
    let c = preset("generic", &s);
    let (svg, w) = emit_svg(&develop(&c, 0).unwrap(), &SvgOptions::default());
    assert!(w.is_empty());
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    let t = develop(&c, 2).unwrap();
    let a = emit_svg(&t, &SvgOptions::default()).0;
    assert_eq!(a, emit_svg(&develop(&c, 2).unwrap(), &SvgOptions::default()).0);
    assert_eq!(a.matches("<polygon").count(), t.tiles.len());
    let opts = SvgOptions { width: 0.0, draw_flag_lines: true, ..Default::default() };
    let (b, w) = emit_svg(&t, &opts);
    assert_eq!(w.len(), 1);
    assert!(b.contains("<path"));
}

#[test]
fn developing_around_a_loop_recovers_holonomy() {
    let mut r = rng(32);
    let s = corpus::s11();
    for _ in 0..5 {
        let c = CoordVector::random(s.tri.clone(), &mut r);
        for (name, p) in corpus::s11_curves().into_iter().take(4) {
            let m = develop_along_path(&c, &p).unwrap();
            let j = j_invariants(&m).unwrap();
            assert_eq!(j, monodromy_of_path(&c, &p).unwrap().j_invariants(), "{name}");
        }
    }
    let c = CoordVector::all_ones(s.tri.clone());
    let id = develop_along_path(&c, &fgcoords::DualPath::empty()).unwrap();
    assert_eq!(id, fgcoords::mat3::Mat3::identity());
}
