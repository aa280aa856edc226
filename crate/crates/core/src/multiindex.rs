//! Cantor-pairing index calculus for bivariate monomials and multi-indices.
//!
//! Monomials `x^t y^s` are enumerated in graded reverse lexicographic order
//! `1, x, y, x^2, xy, y^2, x^3, ...`; the position of `x^t y^s` in that list is
//! [`pair`]`(t, s)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of `x^t y^s` in the graded reverse lexicographic basis.
pub fn pair(t: u64, s: u64) -> u64 {
    let d = t + s;
    d * (d + 1) / 2 + s
}

/// Inverse of [`pair`], computed with an exact integer square root.
pub fn unpair(z: u64) -> (u64, u64) {
    let d = total_degree(z);
    let s = z - d * (d + 1) / 2;
    (d - s, s)
}

/// Total degree of the monomial at position `z`.
pub fn total_degree(z: u64) -> u64 {
    // largest d with d(d+1)/2 <= z, i.e. floor((sqrt(8z+1) - 1) / 2)
    let root = (8 * (z as u128) + 1).isqrt() as u64;
    (root - 1) / 2
}

/// Position of `x * x^l y^m`.
pub fn shift_x(l: u64, m: u64) -> u64 {
    pair(l, m) + (l + m) + 1
}

/// Position of `y * x^l y^m`.
pub fn shift_y(l: u64, m: u64) -> u64 {
    pair(l, m) + (l + m) + 2
}

/// Componentwise sum of two exponent pairs.
pub fn add_pairs(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    (a.0 + b.0, a.1 + b.1)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u64>);

/// Parameters derived from the modulus of a multi-index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexParams {
    pub modulus: u64,
    pub multidegree: (u64, u64),
    pub degree: u64,
    pub remainder: u64,
}

impl IndexParams {
    pub fn from_modulus(modulus: u64) -> Self {
        let (l, m) = unpair(modulus);
        IndexParams {
            modulus,
            multidegree: (l, m),
            degree: l + m,
            remainder: m,
        }
    }
}

impl MultiIndex {
    pub fn new(components: Vec<u64>) -> Self {
        assert!(
            !components.is_empty(),
            "multi-index needs at least one component"
        );
        MultiIndex(components)
    }

    pub fn zeros(r: usize) -> Self {
        MultiIndex::new(vec![0; r])
    }

    /// `(c, c, ..., c)` of length `r`.
    pub fn constant(r: usize, c: u64) -> Self {
        MultiIndex::new(vec![c; r])
    }

    pub fn unit(r: usize, j: usize) -> Self {
        let mut v = vec![0; r];
        v[j] = 1;
        MultiIndex::new(v)
    }

    pub fn components(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u64 {
        self.0[j]
    }

    pub fn modulus(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn params(&self) -> IndexParams {
        IndexParams::from_modulus(self.modulus())
    }

    /// Componentwise `self <= other`; indices of different length are never comparable.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self + c*e_j`.
    pub fn bump(&self, j: usize, c: u64) -> MultiIndex {
        let mut v = self.0.clone();
        v[j] += c;
        MultiIndex(v)
    }

    /// Componentwise `self - c`, or `None` if some component would go negative.
    pub fn checked_sub_scalar(&self, c: u64) -> Option<MultiIndex> {
        self.0
            .iter()
            .map(|&a| a.checked_sub(c))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// If `next = self + e_j` for some `j`, returns `j`.
    pub fn neighbour_step(&self, next: &MultiIndex) -> Option<usize> {
        if self.len() != next.len() || !self.le(next) || next.modulus() != self.modulus() + 1 {
            return None;
        }
        self.0.iter().zip(&next.0).position(|(a, b)| b > a)
    }

    pub fn is_neighbour_of(&self, next: &MultiIndex) -> bool {
        self.neighbour_step(next).is_some()
    }
}

impl From<Vec<u64>> for MultiIndex {
    fn from(v: Vec<u64>) -> Self {
        MultiIndex::new(v)
    }
}

impl<const N: usize> From<[u64; N]> for MultiIndex {
    fn from(v: [u64; N]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    /// Parses `"6,8"` or `"(6,8)"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let comps = inner
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParseScalar {
                literal: s.to_string(),
            })?;
        if comps.is_empty() {
            return Err(Error::ParseScalar {
                literal: s.to_string(),
            });
        }
        Ok(MultiIndex(comps))
    }
}

/// A sequence of neighbour multi-indices whose moduli increase by one per step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Path {
    steps: Vec<MultiIndex>,
}

impl Path {
    pub fn new(steps: Vec<MultiIndex>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::PathInvalid("empty path".into()));
        }
        let r = steps[0].len();
        for w in steps.windows(2) {
            if w[1].len() != r {
                return Err(Error::LengthMismatch {
                    expected: r,
                    found: w[1].len(),
                });
            }
            if !w[0].is_neighbour_of(&w[1]) {
                return Err(Error::PathInvalid(format!(
                    "{} -> {} is not a unit step",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { steps })
    }

    pub fn is_valid(steps: &[MultiIndex]) -> bool {
        Path::new(steps.to_vec()).is_ok()
    }

    pub fn steps(&self) -> &[MultiIndex] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<MultiIndex> {
        self.steps
    }

    pub fn first(&self) -> &MultiIndex {
        &self.steps[0]
    }

    pub fn last(&self) -> &MultiIndex {
        self.steps.last().unwrap()
    }

    pub fn start_modulus(&self) -> u64 {
        self.steps[0].modulus()
    }

    pub fn end_modulus(&self) -> u64 {
        self.last().modulus()
    }

    /// The step whose modulus is `k`, if the path reaches it.
    pub fn at_modulus(&self, k: u64) -> Option<&MultiIndex> {
        let start = self.start_modulus();
        if k < start {
            return None;
        }
        self.steps.get((k - start) as usize)
    }

    /// Prepends the canonical path from the zero index so the path starts at modulus 0.
    pub fn extended_from_zero(&self) -> Path {
        if self.start_modulus() == 0 {
            return self.clone();
        }
        let zero = MultiIndex::zeros(self.first().len());
        let mut head = canonical_path(&[zero, self.first().clone()])
            .expect("zero is below every index")
            .into_steps();
        head.pop();
        head.extend(self.steps.iter().cloned());
        Path { steps: head }
    }

    /// The sub-path spanning moduli `lo..=hi`.
    pub fn slice_moduli(&self, lo: u64, hi: u64) -> Option<Path> {
        let start = self.start_modulus();
        if lo < start || hi > self.end_modulus() || lo > hi {
            return None;
        }
        let a = (lo - start) as usize;
        let b = (hi - start) as usize;
        Some(Path {
            steps: self.steps[a..=b].to_vec(),
        })
    }
}

/// Builds a path through `waypoints`, raising component 1 to its target first,
/// then component 2, and so on between consecutive waypoints.
pub fn canonical_path(waypoints: &[MultiIndex]) -> Result<Path> {
    let Some(first) = waypoints.first() else {
        return Err(Error::PathInvalid("no waypoints".into()));
    };
    let r = first.len();
    let mut steps = vec![first.clone()];
    for w in waypoints.windows(2) {
        let (from, to) = (&w[0], &w[1]);
        if to.len() != r {
            return Err(Error::LengthMismatch {
                expected: r,
                found: to.len(),
            });
        }
        if !from.le(to) {
            return Err(Error::NotComparable(from.clone(), to.clone()));
        }
        let mut cur = from.clone();
        for j in 0..r {
            while cur.get(j) < to.get(j) {
                cur = cur.bump(j, 1);
                steps.push(cur.clone());
            }
        }
    }
    Path::new(steps)
}

/// Checks the two chain conditions for a degree-`d` polynomial vector:
/// `|n_k| = d(d+1)/2 + k` for `k = 0..=d`, and consecutive indices are neighbours.
pub fn validate_chain(indices: &[MultiIndex], d: u64) -> bool {
    if indices.len() as u64 != d + 1 {
        return false;
    }
    let base = d * (d + 1) / 2;
    let moduli_ok = indices
        .iter()
        .enumerate()
        .all(|(k, n)| n.modulus() == base + k as u64);
    moduli_ok && indices.windows(2).all(|w| w[0].is_neighbour_of(&w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(0, 0), 0);
        assert_eq!(pair(1, 2), 8);
        assert_eq!(pair(2, 1), 7);
        assert_eq!(pair(0, 5), 20);
    }

    #[test]
    fn unpair_examples() {
        assert_eq!(unpair(0), (0, 0));
        assert_eq!(unpair(8), (1, 2));
        assert_eq!(unpair(12), (2, 2));
    }

    #[test]
    fn unpair_large_values_are_exact() {
        for d in [1u64 << 20, 3_000_000_000, (1 << 31) - 1] {
            let z = d * (d + 1) / 2;
            assert_eq!(unpair(z), (d, 0));
            assert_eq!(unpair(z - 1), (0, d - 1));
            assert_eq!(unpair(z + d), (0, d));
        }
    }

    #[test]
    fn params_examples() {
        let p = mi(&[6, 2]).params();
        assert_eq!(
            (p.modulus, p.multidegree, p.degree, p.remainder),
            (8, (1, 2), 3, 2)
        );
        let p = mi(&[2, 4, 1]).params();
        assert_eq!((p.modulus, p.degree, p.remainder), (7, 3, 1));
        let p = mi(&[0, 0]).params();
        assert_eq!(
            (p.modulus, p.multidegree, p.degree, p.remainder),
            (0, (0, 0), 0, 0)
        );
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_x(0, 4), 19);
        assert_eq!(shift_y(0, 4), 20);
        assert_eq!(shift_x(0, 0), 1);
        assert_eq!(shift_y(0, 0), 2);
        assert_eq!(shift_y(2, 1), 12);
    }

    #[test]
    fn canonical_path_examples() {
        let p = canonical_path(&[mi(&[0, 0]), mi(&[1, 1])]).unwrap();
        assert_eq!(p.steps(), &[mi(&[0, 0]), mi(&[1, 0]), mi(&[1, 1])]);
        let p = canonical_path(&[mi(&[1, 3])]).unwrap();
        assert_eq!(p.steps(), &[mi(&[1, 3])]);
    }

    #[test]
    fn canonical_path_rejects_incomparable() {
        let err = canonical_path(&[mi(&[2, 0]), mi(&[1, 3])]).unwrap_err();
        assert!(matches!(err, Error::NotComparable(..)));
        let err = canonical_path(&[mi(&[0, 0]), mi(&[1, 1, 1])]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn long_worked_path_is_valid() {
        let steps: Vec<MultiIndex> = [
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
        ]
        .iter()
        .map(|a| mi(a))
        .collect();
        assert_eq!(steps.len(), 21);
        assert!(Path::is_valid(&steps));
        let p = Path::new(steps).unwrap();
        assert_eq!(p.at_modulus(14), Some(&mi(&[6, 8])));
        assert_eq!(p.at_modulus(4), Some(&mi(&[1, 3])));
    }

    #[test]
    fn path_rejects_gap() {
        assert!(!Path::is_valid(&[mi(&[0, 0]), mi(&[1, 1])]));
        assert!(!Path::is_valid(&[mi(&[1, 0]), mi(&[0, 2])]));
    }

    #[test]
    fn extension_from_zero() {
        let p = Path::new(vec![mi(&[1, 3]), mi(&[2, 3])]).unwrap();
        let e = p.extended_from_zero();
        assert_eq!(e.start_modulus(), 0);
        assert_eq!(e.at_modulus(4), Some(&mi(&[1, 3])));
        assert_eq!(e.steps().len(), 6);
    }

    #[test]
    fn chain_validation() {
        assert!(validate_chain(&[mi(&[1, 2]), mi(&[1, 3]), mi(&[2, 3])], 2));
        assert!(!validate_chain(&[mi(&[1, 2]), mi(&[2, 3])], 2));
        assert!(!validate_chain(&[mi(&[1, 2]), mi(&[1, 3]), mi(&[3, 3])], 2));
        assert!(validate_chain(&[mi(&[0, 0, 0])], 0));
    }

    #[test]
    fn parse_index() {
        assert_eq!("6,8".parse::<MultiIndex>().unwrap(), mi(&[6, 8]));
        assert_eq!("(1, 2, 2)".parse::<MultiIndex>().unwrap(), mi(&[1, 2, 2]));
        assert!("a,b".parse::<MultiIndex>().is_err());
    }
}
