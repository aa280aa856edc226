//! Polynomial vectors built from a chain of neighbour multi-indices.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::measures::MeasureSystem;
use crate::mop::{inner, pairing_with, Mops};
use crate::multiindex::{unpair, validate_chain, MultiIndex};
use crate::poly::BiPoly;
use crate::scalar::{negligible, Scalar};

/// Number of monomials of total degree at most `d`.
pub(crate) fn positions_up_to(d: u64) -> u64 {
    (d + 1) * (d + 2) / 2
}

pub(crate) fn chain_degree(chain: &[MultiIndex]) -> Result<u64> {
    let d = chain
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::ChainInvalid("empty chain".into()))? as u64;
    if !validate_chain(chain, d) {
        return Err(Error::ChainInvalid(format!(
            "{} indices must be neighbours with moduli {}..={}",
            chain.len(),
            d * (d + 1) / 2,
            d * (d + 1) / 2 + d
        )));
    }
    Ok(d)
}

/// Leading-zero count of one Gram row against one measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    pub row: usize,
    pub measure: usize,
    pub expected: u64,
    pub observed: u64,
}

/// Type II vector `(P_{n_0}, ..., P_{n_d})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mopv<S> {
    pub degree: u64,
    pub chain: Vec<MultiIndex>,
    pub polys: Vec<BiPoly<S>>,
    pub patterns: Vec<ZeroPattern>,
    pub holds: bool,
}

impl<S: Scalar> Mopv<S> {
    /// `G_{d,k}`: row `i`, column `c` is the coefficient of `x^{k-c} y^c` in `P_{n_i}`.
    pub fn g_matrix(&self, k: u64) -> Matrix<S> {
        Matrix::from_fn(self.polys.len(), k as usize + 1, |i, c| {
            self.polys[i].coeff_of(k - c as u64, c as u64)
        })
    }

    /// `G_{d,d}` is unit lower triangular.
    pub fn leading_is_unit_lower(&self) -> bool {
        let g = self.g_matrix(self.degree);
        (0..g.rows()).all(|i| {
            (0..g.cols()).all(|c| match c.cmp(&i) {
                std::cmp::Ordering::Greater => g.get(i, c).is_zero(),
                std::cmp::Ordering::Equal => g.get(i, c).is_one(),
                std::cmp::Ordering::Less => true,
            })
        })
    }
}

fn leading_zeros<S: Scalar>(row: &[S]) -> u64 {
    row.iter().take_while(|v| negligible(*v, 1.0)).count() as u64
}

/// Gram row `<P, x^t y^s>_j` over all positions of total degree `<= d`.
fn gram_row<S: Scalar>(sys: &MeasureSystem<S>, j: usize, p: &BiPoly<S>, d: u64) -> Result<Vec<S>> {
    (0..positions_up_to(d))
        .map(|z| {
            let (t, s) = unpair(z);
            inner(sys, j, p, &BiPoly::monomial(t, s))
        })
        .collect()
}

pub fn assemble_type2_vector<S: Scalar>(
    sys: &MeasureSystem<S>,
    chain: &[MultiIndex],
) -> Result<Mopv<S>> {
    let d = chain_degree(chain)?;
    let mops = Mops::new(sys);
    let polys = chain
        .iter()
        .map(|n| mops.type2(n))
        .collect::<Result<Vec<_>>>()?;
    let mut patterns = Vec::new();
    for (k, (n, p)) in chain.iter().zip(&polys).enumerate() {
        for j in 0..sys.r() {
            let row = gram_row(sys, j, p, d)?;
            patterns.push(ZeroPattern {
                row: k,
                measure: j,
                expected: n.get(j),
                observed: leading_zeros(&row),
            });
        }
    }
    let mut v = Mopv {
        degree: d,
        chain: chain.to_vec(),
        polys,
        patterns,
        holds: false,
    };
    v.holds = v.patterns.iter().all(|p| p.observed >= p.expected) && v.leading_is_unit_lower();
    Ok(v)
}

/// Type I vectors: `rows[k][j]` is `A_{n_k, j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeIMopv<S> {
    pub degree: u64,
    pub chain: Vec<MultiIndex>,
    pub rows: Vec<Vec<BiPoly<S>>>,
    /// Summed Gram rows `sum_j <A_{n_k,j}, x^t y^s>_j`.
    pub gram: Vec<Vec<S>>,
    pub holds: bool,
}

impl<S: Scalar> TypeIMopv<S> {
    /// The vector `(A_{n_0,j}, ..., A_{n_d,j})` for measure `j`.
    pub fn column(&self, j: usize) -> Vec<BiPoly<S>> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }
}

pub fn assemble_type1_vectors<S: Scalar>(
    sys: &MeasureSystem<S>,
    chain: &[MultiIndex],
) -> Result<TypeIMopv<S>> {
    let d = chain_degree(chain)?;
    let mops = Mops::new(sys);
    let mut rows = Vec::with_capacity(chain.len());
    let mut gram = Vec::with_capacity(chain.len());
    let mut holds = true;
    for n in chain {
        let set = mops.type1(n)?;
        let g = (0..positions_up_to(d))
            .map(|z| {
                let (t, s) = unpair(z);
                pairing_with(sys, &BiPoly::monomial(t, s), &set)
            })
            .collect::<Result<Vec<S>>>()?;
        let last = n.modulus() as usize - 1;
        holds &= leading_zeros(&g[..last]) == last as u64
            && negligible(&(g[last].clone() - S::one()), 1.0);
        rows.push(set.polys);
        gram.push(g);
    }
    Ok(TypeIMopv {
        degree: d,
        chain: chain.to_vec(),
        rows,
        gram,
        holds,
    })
}
