#![allow(dead_code)]

use fgcoords::field::{q, qi};
use fgcoords::flags::{in_general_position, Flag, ProjPoint};
use fgcoords::mat3::Mat3;
use num::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type Q = BigRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int<R: Rng>(r: &mut R) -> i64 {
    r.gen_range(-9..=9)
}

/// Nonzero rational with small numerator and denominator.
pub fn nonzero<R: Rng>(r: &mut R) -> Q {
    let p = loop {
        let p = small_int(r);
        if p != 0 {
            break p;
        }
    };
    q(p, r.gen_range(1..=9))
}

pub fn positive<R: Rng>(r: &mut R) -> Q {
    q(r.gen_range(1..=9), r.gen_range(1..=9))
}

pub fn point<R: Rng>(r: &mut R) -> ProjPoint {
    loop {
        let p = ProjPoint::from_ints(small_int(r), small_int(r), small_int(r));
        if p.0.iter().any(|x| *x != qi(0)) {
            return p;
        }
    }
}

pub fn flag<R: Rng>(r: &mut R) -> Flag {
    loop {
        let p = point(r);
        let l = p.join(&point(r));
        if l.0.iter().any(|x| *x != qi(0)) {
            return Flag::new(p, l).unwrap();
        }
    }
}

/// `k` random flags in general position.
pub fn flags<R: Rng>(r: &mut R, k: usize) -> Vec<Flag> {
    loop {
        let fs: Vec<Flag> = (0..k).map(|_| flag(r)).collect();
        if in_general_position(&fs) {
            return fs;
        }
    }
}

pub fn invertible<R: Rng>(r: &mut R) -> Mat3<Q> {
    loop {
        let e: Vec<i64> = (0..9).map(|_| small_int(r)).collect();
        let m = Mat3::from_fn(|i, j| qi(e[3 * i + j]));
        if m.det() != qi(0) {
            return m;
        }
    }
}
