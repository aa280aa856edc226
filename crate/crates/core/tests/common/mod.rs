#![allow(dead_code)]

use bimop_core::measures::{laguerre, BivariateMeasure, MeasureSystem};
use bimop_core::{MultiIndex, Path, Scalar};

pub mod oracle;

pub fn mi(c: &[u64]) -> MultiIndex {
    MultiIndex::new(c.to_vec())
}

pub fn lag(a: &str, b: &str) -> BivariateMeasure {
    BivariateMeasure::tensor(laguerre(a), laguerre(b))
}

/// `[Lag(1) x Lag(23/10), Lag(11/5) x Lag(17/5)]`.
pub fn two_measures<S: Scalar>() -> MeasureSystem<S> {
    MeasureSystem::new(vec![lag("1", "23/10"), lag("11/5", "17/5")]).unwrap()
}

/// `(mu1 phi1, mu1 phi2, mu2 phi1, mu2 phi2)` with `mu = Lag(1), Lag(11/5)`
/// and `phi = Lag(23/10), Lag(17/5)`.
pub fn four_measures<S: Scalar>() -> MeasureSystem<S> {
    MeasureSystem::new(vec![
        lag("1", "23/10"),
        lag("1", "17/5"),
        lag("11/5", "23/10"),
        lag("11/5", "17/5"),
    ])
    .unwrap()
}

pub fn path(steps: &[[u64; 2]]) -> Path {
    Path::new(steps.iter().map(|s| mi(s)).collect()).unwrap()
}

/// First worked path for `n = (6,8)`, ending at `w_y = (9,11)`.
pub fn nnr_path_a() -> Path {
    path(&[
        [0, 0],
        [0, 1],
        [0, 2],
        [1, 2],
        [1, 3],
        [2, 3],
        [2, 4],
        [2, 5],
        [2, 6],
        [3, 6],
        [3, 7],
        [4, 7],
        [5, 7],
        [6, 7],
        [6, 8],
        [7, 8],
        [7, 9],
        [8, 9],
        [9, 9],
        [9, 10],
        [9, 11],
    ])
}

/// Second worked path for `n = (6,8)`, ending at `w_y = (12,8)`.
pub fn nnr_path_b() -> Path {
    path(&[
        [0, 0],
        [1, 0],
        [1, 1],
        [1, 2],
        [1, 3],
        [1, 4],
        [1, 5],
        [1, 6],
        [2, 6],
        [3, 6],
        [3, 7],
        [3, 8],
        [4, 8],
        [5, 8],
        [6, 8],
        [7, 8],
        [8, 8],
        [9, 8],
        [10, 8],
        [11, 8],
        [12, 8],
    ])
}

/// The degree-2 chain `(1,2), (1,3), (2,3)`.
pub fn chain_d2() -> Vec<MultiIndex> {
    vec![mi(&[1, 2]), mi(&[1, 3]), mi(&[2, 3])]
}

/// Every multi-index of length `r` with modulus at most `max`.
pub fn indices(r: usize, max: u64) -> Vec<MultiIndex> {
    fn go(r: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<MultiIndex>) {
        if cur.len() == r {
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(r, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, max, &mut Vec::new(), &mut out);
    out
}
