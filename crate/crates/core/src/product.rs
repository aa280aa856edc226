//! Products of univariate Type II polynomials as bivariate Type II polynomials.
//!
//! Given systems `(mu_1..mu_r1)` on the x-axis and `(phi_1..phi_r2)` on the
//! y-axis, the tensor system `mu_i x phi_j` is ordered row-major in `(i, j)`.
//! For univariate indices `n`, `m` the product `P_n(x) Q_m(y)` is the bivariate
//! Type II polynomial of any normal `v <= tilde_v(n, m)` with
//! `|v| = pair(|n|, |m|)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::measures::{
    BivariateMeasure, MeasureSystem, ProductConfig, UniSystem, UnivariateFamily,
};
use crate::mop::{is_normal, type2, uni_moment_matrix, uni_type2};
use crate::multiindex::{pair, MultiIndex};
use crate::poly::BiPoly;
use crate::relations::Axis;
use crate::scalar::{negligible, Scalar, Tolerance};

#[derive(Debug)]
pub struct ProductSystem<S> {
    x: UniSystem<S>,
    y: UniSystem<S>,
    tensor: MeasureSystem<S>,
}

impl<S: Scalar> Clone for ProductSystem<S> {
    fn clone(&self) -> Self {
        ProductSystem {
            x: self.x.clone(),
            y: self.y.clone(),
            tensor: self.tensor.clone(),
        }
    }
}

impl<S: Scalar> ProductSystem<S> {
    pub fn new(x: Vec<UnivariateFamily>, y: Vec<UnivariateFamily>) -> Result<Self> {
        Self::with_tolerance(x, y, Tolerance::default())
    }

    pub fn with_tolerance(
        x: Vec<UnivariateFamily>,
        y: Vec<UnivariateFamily>,
        tol: Tolerance,
    ) -> Result<Self> {
        let measures = x
            .iter()
            .flat_map(|mu| {
                y.iter()
                    .map(move |phi| BivariateMeasure::tensor(mu.clone(), phi.clone()))
            })
            .collect();
        Ok(ProductSystem {
            tensor: MeasureSystem::with_tolerance(measures, tol)?,
            x: UniSystem::with_tolerance(x, tol)?,
            y: UniSystem::with_tolerance(y, tol)?,
        })
    }

    pub fn from_config(config: &ProductConfig) -> Result<Self> {
        Self::new(config.x.clone(), config.y.clone())
    }

    pub fn x(&self) -> &UniSystem<S> {
        &self.x
    }

    pub fn y(&self) -> &UniSystem<S> {
        &self.y
    }

    pub fn tensor(&self) -> &MeasureSystem<S> {
        &self.tensor
    }

    fn check_shapes(&self, n: &MultiIndex, m: &MultiIndex) -> Result<()> {
        if n.len() != self.x.r() {
            return Err(Error::LengthMismatch {
                expected: self.x.r(),
                found: n.len(),
            });
        }
        if m.len() != self.y.r() {
            return Err(Error::LengthMismatch {
                expected: self.y.r(),
                found: m.len(),
            });
        }
        Ok(())
    }
}

/// `(pair(n_i, m_j))` in row-major order.
pub fn tilde_v(n: &MultiIndex, m: &MultiIndex) -> MultiIndex {
    MultiIndex::new(
        n.components()
            .iter()
            .flat_map(|&ni| m.components().iter().map(move |&mj| pair(ni, mj)))
            .collect(),
    )
}

/// Greedy choice of `v <= tilde_v` with `|v| = pair(|n|, |m|)`.
///
/// The surplus is taken from the largest components first; ties go to the
/// lower position.
pub fn find_v(n: &MultiIndex, m: &MultiIndex) -> Result<MultiIndex> {
    let tilde = tilde_v(n, m);
    let target = pair(n.modulus(), m.modulus());
    let mut surplus = tilde
        .modulus()
        .checked_sub(target)
        .ok_or(Error::SurplusNegative {
            tilde: tilde.modulus(),
            target,
        })?;
    let mut v = tilde.components().to_vec();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].cmp(&v[a]).then(a.cmp(&b)));
    for i in order {
        let take = surplus.min(v[i]);
        v[i] -= take;
        surplus -= take;
    }
    Ok(MultiIndex::new(v))
}

/// Every `v <= tilde_v(n, m)` with `|v| = pair(|n|, |m|)`, ascending lexicographically.
pub fn enumerate_v(n: &MultiIndex, m: &MultiIndex) -> Vec<MultiIndex> {
    let tilde = tilde_v(n, m);
    let target = pair(n.modulus(), m.modulus());
    let bounds = tilde.components();
    // suffix[i] = sum of bounds[i..]
    let mut suffix = vec![0u64; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        suffix[i] = suffix[i + 1] + bounds[i];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(bounds.len());
    fill(bounds, &suffix, target, &mut cur, &mut out);
    out
}

fn fill(bounds: &[u64], suffix: &[u64], left: u64, cur: &mut Vec<u64>, out: &mut Vec<MultiIndex>) {
    let i = cur.len();
    if i == bounds.len() {
        if left == 0 {
            out.push(MultiIndex::new(cur.clone()));
        }
        return;
    }
    let lo = left.saturating_sub(suffix[i + 1]);
    let hi = bounds[i].min(left);
    for c in lo..=hi {
        cur.push(c);
        fill(bounds, suffix, left - c, cur, out);
        cur.pop();
    }
}

/// The greedy `v` if it is normal, else the first normal candidate in
/// [`enumerate_v`] order. `None` when no candidate is normal.
pub fn find_normal_v<S: Scalar>(
    ps: &ProductSystem<S>,
    n: &MultiIndex,
    m: &MultiIndex,
) -> Result<Option<MultiIndex>> {
    ps.check_shapes(n, m)?;
    let greedy = find_v(n, m)?;
    if is_normal(&ps.tensor, &greedy)?.0 {
        return Ok(Some(greedy));
    }
    for v in enumerate_v(n, m) {
        if v != greedy && is_normal(&ps.tensor, &v)?.0 {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// `P_n(x) Q_m(y)` from the two univariate Type II polynomials.
pub fn product_poly<S: Scalar>(
    ps: &ProductSystem<S>,
    n: &MultiIndex,
    m: &MultiIndex,
) -> Result<BiPoly<S>> {
    ps.check_shapes(n, m)?;
    let p = uni_type2(&ps.x, n)?;
    let q = uni_type2(&ps.y, m)?;
    let mut terms = Vec::new();
    for (t, a) in p.coeffs().iter().enumerate() {
        for (s, b) in q.coeffs().iter().enumerate() {
            terms.push((t as u64, s as u64, a.clone() * b.clone()));
        }
    }
    Ok(BiPoly::from_terms(terms))
}

/// Whether the bivariate Type II polynomial of `v` equals the product polynomial.
pub fn verify_product<S: Scalar>(
    ps: &ProductSystem<S>,
    n: &MultiIndex,
    m: &MultiIndex,
    v: &MultiIndex,
) -> Result<bool> {
    ps.check_shapes(n, m)?;
    let tilde = tilde_v(n, m);
    let target = pair(n.modulus(), m.modulus());
    if v.len() != tilde.len() {
        return Err(Error::BadV(format!(
            "{v} has {} components, expected {}",
            v.len(),
            tilde.len()
        )));
    }
    if !v.le(&tilde) {
        return Err(Error::BadV(format!("{v} is not below {tilde}")));
    }
    if v.modulus() != target {
        return Err(Error::BadV(format!(
            "|{v}| = {}, expected {target}",
            v.modulus()
        )));
    }
    let bivariate = type2(&ps.tensor, v)?;
    let product = product_poly(ps, n, m)?;
    Ok(polys_agree(&bivariate, &product))
}

pub(crate) fn polys_agree<S: Scalar>(a: &BiPoly<S>, b: &BiPoly<S>) -> bool {
    let scale = a
        .coeffs()
        .iter()
        .chain(b.coeffs())
        .map(|c| c.to_f64().abs())
        .fold(0.0, f64::max);
    let diff = a.sub(b);
    diff.coeffs().iter().all(|c| negligible(c, scale))
}

/// A univariate moment used as a scalar factor, written `x2:0` for the
/// zeroth moment of the second x-measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScalarMoment {
    pub axis: Axis,
    /// 0-based.
    pub measure: usize,
    pub order: u64,
}

impl FromStr for ScalarMoment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::schema("scalar", format!("expected e.g. \"x2:0\", got {s:?}"));
        let (head, order) = s.split_once(':').ok_or_else(bad)?;
        let axis = head.get(..1).ok_or_else(bad)?.parse::<Axis>()?;
        let measure: usize = head[1..].parse().map_err(|_| bad())?;
        let order = order.parse().map_err(|_| bad())?;
        if measure == 0 {
            return Err(bad());
        }
        Ok(ScalarMoment {
            axis,
            measure: measure - 1,
            order,
        })
    }
}

impl fmt::Display for ScalarMoment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = match self.axis {
            Axis::X => "x",
            Axis::Y => "y",
        };
        write!(f, "{axis}{}:{}", self.measure + 1, self.order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorVerdict {
    /// Both sides nonzero; the ratio is the proportionality constant.
    Proportional,
    /// `det M_v = 0` while the factors do not vanish.
    Zero,
    /// Both sides vanish.
    Indeterminate,
}

#[derive(Debug, Clone)]
pub struct FactorCheck<S> {
    pub det_v: S,
    pub x_dets: Vec<S>,
    pub y_dets: Vec<S>,
    pub scalars: Vec<S>,
    pub denominator: S,
    pub ratio: Option<S>,
    pub verdict: FactorVerdict,
}

/// `det M_v` divided by the product of univariate factor determinants and
/// scalar moments.
pub fn det_factor_check<S: Scalar>(
    ps: &ProductSystem<S>,
    v: &MultiIndex,
    x_factors: &[MultiIndex],
    y_factors: &[MultiIndex],
    scalars: &[ScalarMoment],
) -> Result<FactorCheck<S>> {
    let tol = ps.tensor.tolerance();
    let det_v = S::det(&crate::mop::moment_matrix(&ps.tensor, v)?.matrix, tol)?;
    let uni_det = |sys: &UniSystem<S>, k: &MultiIndex| -> Result<S> {
        if k.len() != sys.r() {
            return Err(Error::LengthMismatch {
                expected: sys.r(),
                found: k.len(),
            });
        }
        let m: Matrix<S> = uni_moment_matrix(sys, k)?;
        S::det(&m, tol)
    };
    let x_dets = x_factors
        .iter()
        .map(|k| uni_det(&ps.x, k))
        .collect::<Result<Vec<_>>>()?;
    let y_dets = y_factors
        .iter()
        .map(|k| uni_det(&ps.y, k))
        .collect::<Result<Vec<_>>>()?;
    let scalar_values = scalars
        .iter()
        .map(|c| match c.axis {
            Axis::X => ps.x.moment(c.measure, c.order),
            Axis::Y => ps.y.moment(c.measure, c.order),
        })
        .collect::<Result<Vec<_>>>()?;
    let denominator = x_dets
        .iter()
        .chain(&y_dets)
        .chain(&scalar_values)
        .fold(S::one(), |acc, d| acc * d.clone());
    let (ratio, verdict) = match (det_v.is_zero(), denominator.is_zero()) {
        (true, true) => (None, FactorVerdict::Indeterminate),
        (false, true) => {
            return Err(Error::DivisionByZeroFactor {
                det: det_v.to_literal(),
            })
        }
        (true, false) => (Some(S::zero()), FactorVerdict::Zero),
        (false, false) => (
            Some(det_v.clone() / denominator.clone()),
            FactorVerdict::Proportional,
        ),
    };
    Ok(FactorCheck {
        det_v,
        x_dets,
        y_dets,
        scalars: scalar_values,
        denominator,
        ratio,
        verdict,
    })
}
