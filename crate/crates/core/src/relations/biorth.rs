//! Pairings between Type II polynomials and Type I functions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::measures::MeasureSystem;
use crate::mop::Mops;
use crate::multiindex::{validate_chain, MultiIndex};
use crate::scalar::{negligible, Scalar};

/// Which branch of the biorthogonality relation applies to `<P_n, Q_m>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BiorthCase {
    #[serde(rename = "m<=n")]
    MBelowN,
    #[serde(rename = "|n|<=|m|-2")]
    FarBelow,
    #[serde(rename = "|n|=|m|-1")]
    Adjacent,
    #[serde(rename = "unconstrained")]
    Unconstrained,
}

impl BiorthCase {
    pub fn classify(n: &MultiIndex, m: &MultiIndex) -> Self {
        let (a, b) = (n.modulus(), m.modulus());
        if m.le(n) {
            BiorthCase::MBelowN
        } else if a + 2 <= b {
            BiorthCase::FarBelow
        } else if a + 1 == b {
            BiorthCase::Adjacent
        } else {
            BiorthCase::Unconstrained
        }
    }

    /// Predicted value of the pairing, if the branch fixes one.
    pub fn expected<S: Scalar>(self) -> Option<S> {
        match self {
            BiorthCase::MBelowN | BiorthCase::FarBelow => Some(S::zero()),
            BiorthCase::Adjacent => Some(S::one()),
            BiorthCase::Unconstrained => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BiorthCase::MBelowN => "m<=n",
            BiorthCase::FarBelow => "|n|<=|m|-2",
            BiorthCase::Adjacent => "|n|=|m|-1",
            BiorthCase::Unconstrained => "unconstrained",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Biorth<S> {
    pub value: S,
    pub case: BiorthCase,
    /// `true` when the value matches the branch, or when no branch applies.
    pub holds: bool,
}

fn matches_case<S: Scalar>(value: &S, case: BiorthCase) -> bool {
    case.expected::<S>()
        .is_none_or(|e| negligible(&(value.clone() - e), 1.0))
}

/// Like [`biorth`], reusing polynomials already solved in `mops`.
pub fn biorth_with<S: Scalar>(
    mops: &Mops<'_, S>,
    n: &MultiIndex,
    m: &MultiIndex,
) -> Result<Biorth<S>> {
    let value = mops.pairing(&mops.type2(n)?, m)?;
    let case = BiorthCase::classify(n, m);
    let holds = matches_case(&value, case);
    Ok(Biorth { value, case, holds })
}

/// `<P_n, Q_m>` with the branch that predicts it.
pub fn biorth<S: Scalar>(
    sys: &MeasureSystem<S>,
    n: &MultiIndex,
    m: &MultiIndex,
) -> Result<Biorth<S>> {
    biorth_with(&Mops::new(sys), n, m)
}

/// Structural shape of the pairing matrix between two chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainPattern {
    /// `m_h <= n_0`: all zero.
    ZeroBlock,
    /// Identical chains: ones on the superdiagonal.
    ShiftedIdentity,
    /// `h = d + 1`: a single one in the bottom-left corner.
    BottomLeftUnit,
    /// `h >= d + 2`: all zero.
    ZeroHigh,
    Unconstrained,
}

impl ChainPattern {
    pub fn classify(chain_n: &[MultiIndex], chain_m: &[MultiIndex]) -> Self {
        let d = chain_n.len() - 1;
        let h = chain_m.len() - 1;
        if chain_m[h].le(&chain_n[0]) {
            ChainPattern::ZeroBlock
        } else if chain_m == chain_n {
            ChainPattern::ShiftedIdentity
        } else if h == d + 1 {
            ChainPattern::BottomLeftUnit
        } else if h >= d + 2 {
            ChainPattern::ZeroHigh
        } else {
            ChainPattern::Unconstrained
        }
    }

    /// Entry `(k, i)` of the predicted matrix, or `None` when unconstrained.
    pub fn expected<S: Scalar>(self, d: usize, k: usize, i: usize) -> Option<S> {
        let one = |c: bool| Some(if c { S::one() } else { S::zero() });
        match self {
            ChainPattern::ZeroBlock | ChainPattern::ZeroHigh => Some(S::zero()),
            ChainPattern::ShiftedIdentity => one(i == k + 1),
            ChainPattern::BottomLeftUnit => one(k == d && i == 0),
            ChainPattern::Unconstrained => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiorthMatrix<S> {
    /// Entry `(k, i)` is `<P_{n_k}, Q_{m_i}>`.
    pub matrix: Matrix<S>,
    pub pattern: ChainPattern,
    /// Per-entry branch labels.
    pub cases: Vec<Vec<BiorthCase>>,
    pub holds: bool,
}

/// The `(d+1) x (h+1)` pairing matrix between a Type II vector and a Type I vector.
pub fn biorth_matrix<S: Scalar>(
    sys: &MeasureSystem<S>,
    chain_n: &[MultiIndex],
    chain_m: &[MultiIndex],
) -> Result<BiorthMatrix<S>> {
    for chain in [chain_n, chain_m] {
        let d = chain
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::ChainInvalid("empty chain".into()))?;
        if !validate_chain(chain, d as u64) {
            return Err(Error::ChainInvalid(format!(
                "{} indices do not form a degree-{d} chain",
                chain.len()
            )));
        }
    }
    let mops = Mops::new(sys);
    let d = chain_n.len() - 1;
    let pattern = ChainPattern::classify(chain_n, chain_m);
    let mut rows = Vec::with_capacity(chain_n.len());
    let mut cases = Vec::with_capacity(chain_n.len());
    let mut holds = true;
    for (k, n) in chain_n.iter().enumerate() {
        let mut row = Vec::with_capacity(chain_m.len());
        let mut case_row = Vec::with_capacity(chain_m.len());
        for (i, m) in chain_m.iter().enumerate() {
            let b = biorth_with(&mops, n, m)?;
            holds &= b.holds;
            if let Some(e) = pattern.expected::<S>(d, k, i) {
                holds &= negligible(&(b.value.clone() - e), 1.0);
            }
            row.push(b.value);
            case_row.push(b.case);
        }
        rows.push(row);
        cases.push(case_row);
    }
    Ok(BiorthMatrix {
        matrix: Matrix::from_rows(rows)?,
        pattern,
        cases,
        holds,
    })
}
