//! Exact rank over the rationals.

use num::{BigRational, Zero};

/// Rank of a rational matrix given as rows, by Gaussian elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() / pivot.clone();
                for j in c..ncols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of an integer matrix.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let q: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| crate::field::qi(x)).collect()).collect();
    rank(&q)
}

/// Inverse of a square integer matrix over the rationals.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| crate::field::qi(x)).collect();
            row.extend((0..n).map(|j| crate::field::qi((i == j) as i64)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in 0..2 * n {
            a[c][j] = a[c][j].clone() / pivot.clone();
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let d = f.clone() * a[c][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
