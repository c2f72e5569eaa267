mod common;

use common::*;
use fgcoords::coords::CoordVector;
use fgcoords::corpus;
use fgcoords::dual::Dual;
use fgcoords::error::Error;
use fgcoords::field::{qi, to_f64};
use fgcoords::holonomy::{monodromy_of_path, peripheral_exponents};
use fgcoords::poisson::*;
use fgcoords::surface::DualPath;

fn random_f64(c: &CoordVector) -> Vec<f64> {
    c.to_f64()
}

#[test]
fn epsilon_table_shape() {
    for ns in corpus::surfaces() {
        let eps = EpsilonTable::amalgamated(&ns.tri);
        let n = eps.len();
        assert_eq!(n, 4 * ns.tri.n_triangles());
        let nt = ns.tri.n_triangles();
        for i in 0..n {
            assert_eq!(eps.get(i, i), 0);
            for j in 0..n {
                assert_eq!(eps.get(i, j), -eps.get(j, i));
                if i < nt && j < nt {
                    assert_eq!(eps.get(i, j), 0);
                }
            }
        }
        if ns.tri.validate_distinct_faces() {
            let strict = EpsilonTable::new(&ns.tri).unwrap();
            assert_eq!(strict, eps);
            for i in 0..n {
                for j in 0..n {
                    assert!(eps.get(i, j).abs() <= 1, "{} {i} {j}", ns.name);
                }
            }
        } else {
            assert!(matches!(EpsilonTable::new(&ns.tri), Err(Error::AssumptionIViolated)));
        }
    }
    // a triangle brackets non-trivially with a coherent edge of its own
    let s = corpus::s03();
    let eps = EpsilonTable::amalgamated(&s.tri);
    assert_ne!(eps.get(s.idx("t142"), s.idx("e24")), 0);
}

#[test]
fn antisymmetry_and_jacobi() {
    let mut r = rng(40);
    let s = corpus::s11();
    let eps = EpsilonTable::new(&s.tri).unwrap();
    let n = eps.len();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let q = random_f64(&CoordVector::random(s.tri.clone(), &mut r));
        let f = RandomObservable::sample(&mut r, n);
        let g = RandomObservable::sample(&mut r, n);
        let h = RandomObservable::sample(&mut r, n);
        let fg = fg_bracket_at(&eps, &f, &g, &q);
        let gf = fg_bracket_at(&eps, &g, &f, &q);
        worst = worst.max((fg + gf).abs());
        let br = |a: &RandomObservable, b: &RandomObservable, c: &RandomObservable| {
            fg_bracket_at(&eps, a, &Bracket { eps: &eps, f: b, g: c }, &q)
        };
        let jac = br(&f, &g, &h) + br(&g, &h, &f) + br(&h, &f, &g);
        let scale = 1.0 + br(&f, &g, &h).abs();
        worst = worst.max(jac.abs() / scale);
    }
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn bracket_is_flip_invariant() {
    let mut r = rng(41);
    let s = corpus::s11();
    let eps = EpsilonTable::new(&s.tri).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let c = CoordVector::random(s.tri.clone(), &mut r);
        let e = s.tri.edges()[i % 3];
        let (f, rl) = c.flip(e).unwrap();
        let eps2 = EpsilonTable::new(f.triangulation()).unwrap();
        let n = eps.len();
        let a = RandomObservable::sample(&mut r, n);
        let b = RandomObservable::sample(&mut r, n);
        let after = fg_bracket(&eps2, &a, &b, &f);
        let pa = FlipPullback { old: s.tri.clone(), relabel: rl.clone(), obs: a.clone() };
        let pb = FlipPullback { old: s.tri.clone(), relabel: rl, obs: b.clone() };
        let before = fg_bracket(&eps, &pa, &pb, &c);
        worst = worst.max((after - before).abs() / (1.0 + after.abs()));
    }
    assert!(worst < 1e-9, "{worst}");
}

#[test]
fn peripheral_monomials_are_casimirs() {
    for ns in corpus::surfaces() {
        let eps = EpsilonTable::amalgamated(&ns.tri);
        for v in 0..ns.tri.n_vertices() {
            let (x, y) = peripheral_exponents(&ns.tri, v).unwrap();
            assert!(casimir_check(&eps, &x), "{} X{v}", ns.name);
            assert!(casimir_check(&eps, &y), "{} Y{v}", ns.name);
        }
        let mut single = vec![0; eps.len()];
        single[0] = 1;
        assert!(!casimir_check(&eps, &single));
    }
}

#[test]
fn bracket_ranks() {
    let mut r = rng(42);
    for (ns, want) in [(corpus::s11(), 6), (corpus::s03(), 2), (corpus::s12(), 12), (corpus::s03_doubled(), 2)] {
        for _ in 0..20 {
            let c = CoordVector::random(ns.tri.clone(), &mut r);
            assert_eq!(poisson_rank(&c), want, "{}", ns.name);
        }
    }
}

#[test]
fn trace_observables() {
    let s = corpus::s11();
    let ones = CoordVector::all_ones(s.tri.clone());
    let p = s.tri.peripheral_path(0).unwrap();
    let t = TraceObservable::new(&s.tri, &p).unwrap();
    assert!((t.eval(&ones.to_f64()) - 3.0).abs() < 1e-12);
    assert_eq!(TraceObservable::new(&s.tri, &DualPath::empty()).unwrap().eval(&ones.to_f64()), 3.0);
    let open = DualPath::open(&s.tri, vec![0]).unwrap();
    assert!(TraceObservable::new(&s.tri, &open).is_err());
    let mut r = rng(43);
    for (_, path) in corpus::s11_curves() {
        let c = CoordVector::random(s.tri.clone(), &mut r);
        let m = monodromy_of_path(&c, &path).unwrap();
        let exact = to_f64(&m.entries.trace()) / to_f64(&m.det).cbrt();
        let t = TraceObservable::new(&s.tri, &path).unwrap().eval(&c.to_f64());
        assert!((t - exact).abs() < 1e-9 * exact.abs().max(1.0), "{t} {exact}");
    }
}

#[test]
fn dual_derivatives_match_finite_differences() {
    let mut r = rng(44);
    let s = corpus::s11();
    let curves = corpus::s11_curves();
    let obs = TraceObservable::new(&s.tri, &curves[2].1).unwrap();
    let q = CoordVector::random(s.tri.clone(), &mut r).to_f64();
    let d = obs.eval(&Dual::seed(&q));
    for i in 0..q.len() {
        let h = 1e-6 * q[i];
        let mut up = q.clone();
        up[i] += h;
        let mut dn = q.clone();
        dn[i] -= h;
        let fd = (obs.eval(&up) - obs.eval(&dn)) / (2.0 * h);
        assert!((fd - d.partial(i)).abs() < 1e-5 * (1.0 + fd.abs()), "{i}: {fd} vs {}", d.partial(i));
    }
    let m = Monomial(vec![1, -2, 0, 0, 3, 0, 0, 0]);
    let dm = m.eval(&Dual::seed(&q));
    assert!((dm.partial(1) + 2.0 * m.eval(&q) / q[1]).abs() < 1e-9 * m.eval(&q).abs());
}

#[test]
fn coordinate_bracket_matches_table() {
    let s = corpus::s11();
    let eps = EpsilonTable::new(&s.tri).unwrap();
    let c = corpus::presets(&s).into_iter().find(|(n, _)| *n == "generic").unwrap().1;
    let q = c.to_f64();
    for i in 0..eps.len() {
        for j in 0..eps.len() {
            let exact = eps.coordinate_bracket(i, j, c.values());
            assert_eq!(exact, qi(2 * eps.get(i, j) as i64) * c.values()[i].clone() * c.values()[j].clone());
            let fl = fg_bracket_at(&eps, &Coordinate(i), &Coordinate(j), &q);
            assert!((fl - to_f64(&exact)).abs() < 1e-12);
        }
    }
}

#[test]
fn tunnel_intersection_counts() {
    let want = [("a-abb", 2), ("b-aaabb", 3), ("abb-aabab", 4)];
    let pairs = corpus::s11_pairs();
    for (name, n) in want {
        let p = &pairs.iter().find(|(k, _)| *k == name).unwrap().1;
        assert_eq!(p.intersections.len(), n, "{name}");
        let signs: i32 = p.intersections.iter().map(|x| x.sign as i32).sum();
        assert_eq!(signs.unsigned_abs() as usize, n, "{name}");
    }
    let s = corpus::s11();
    let curves = corpus::s11_curves();
    let a = curves[0].1.clone();
    let disjoint = AnnotatedCurvePair::annotate(&s.tri, a.clone(), a.clone());
    assert!(disjoint.intersections.is_empty());
    let c = CoordVector::random(s.tri.clone(), &mut rng(45));
    assert_eq!(goldman_bracket(&disjoint, &c), 0.0);
}

#[test]
fn goldman_compatibility() {
    let s = corpus::s11();
    let eps = EpsilonTable::new(&s.tri).unwrap();
    let mut r = rng(46);
    for (name, pair) in corpus::s11_pairs() {
        for _ in 0..10 {
            let c = CoordVector::random(s.tri.clone(), &mut r);
            let res = compatibility_residual(&eps, &pair, &c).unwrap();
            let fa = TraceObservable::new(&s.tri, &pair.alpha).unwrap();
            let fb = TraceObservable::new(&s.tri, &pair.beta).unwrap();
            let scale = fg_bracket(&eps, &fa, &fb, &c).abs();
            assert!(res < 1e-8 * (1.0 + scale), "{name}: {res} (bracket {scale})");
        }
    }
}

#[test]
fn compatibility_holds_exactly() {
    let s = corpus::s11();
    let eps = EpsilonTable::new(&s.tri).unwrap();
    let mut r = rng(47);
    for (name, pair) in corpus::s11_pairs() {
        for _ in 0..3 {
            let c = CoordVector::random(s.tri.clone(), &mut r);
            let (defect, scale) = exact_compatibility_defect(&eps, &pair, &c).unwrap();
            assert_eq!(defect, qi(0), "{name}");
            assert!(scale > 0.0);
        }
    }
    // a wrong sign on one intersection breaks the identity
    let (_, mut pair) = corpus::s11_pairs().remove(0);
    pair.intersections[0].sign *= -1;
    let c = CoordVector::random(s.tri.clone(), &mut r);
    assert_ne!(exact_compatibility_defect(&eps, &pair, &c).unwrap().0, qi(0));
    assert!(compatibility_residual(&eps, &pair, &c).unwrap() > 1e-3);
}
