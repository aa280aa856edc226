//! Moment matrices, normality, and Type I / Type II solvers.
//!
//! Bivariate monomials are enumerated by Cantor position. For a multi-index `n`
//! the block moment matrix `M_n` has `|n|` rows, one per monomial below position
//! `|n|`, and one column block per measure whose width is `n_j`:
//!
//! ```text
//! M_n[k][(j, l)] = m^(j)_{unpair(k) + unpair(l)}
//! ```
//!
//! Type II coefficients solve `M_n^T c = -b`; Type I coefficients solve
//! `M_n c = e_{|n|}`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::measures::{MeasureSystem, UniSystem};
use crate::multiindex::{add_pairs, unpair, MultiIndex};
use crate::poly::{BiPoly, UniPoly};
use crate::scalar::{Scalar, ScalarMode, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix<S> {
    pub index: MultiIndex,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> MomentMatrix<S> {
    pub fn det(&self, tol: &Tolerance) -> Result<S> {
        linalg::det(&self.matrix, tol)
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normality {
    Normal,
    Singular,
    /// Float mode only: the condition estimate is too small to decide.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalityReport<S> {
    pub verdict: Normality,
    pub det: S,
    /// Reciprocal condition number of the equilibrated matrix, float mode only.
    pub rcond: Option<f64>,
}

impl<S: Scalar> NormalityReport<S> {
    pub fn is_normal(&self) -> bool {
        self.verdict == Normality::Normal
    }
}

/// The polynomials `A_{n,1}, ..., A_{n,r}` of a Type I set.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeISet<S> {
    pub index: MultiIndex,
    pub polys: Vec<BiPoly<S>>,
}

fn check_len<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<()> {
    if n.len() != sys.r() {
        return Err(Error::LengthMismatch {
            expected: sys.r(),
            found: n.len(),
        });
    }
    Ok(())
}

/// Column labels `(j, l)` of `M_n`, block by block.
fn columns(n: &MultiIndex) -> Vec<(usize, u64)> {
    n.components()
        .iter()
        .enumerate()
        .flat_map(|(j, &nj)| (0..nj).map(move |l| (j, l)))
        .collect()
}

pub fn moment_matrix<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<MomentMatrix<S>> {
    check_len(sys, n)?;
    let size = n.modulus() as usize;
    let cols = columns(n);
    let mut data = Vec::with_capacity(size * size);
    for k in 0..size as u64 {
        for &(j, l) in &cols {
            data.push(sys.moment_at(j, add_pairs(unpair(k), unpair(l)))?);
        }
    }
    Ok(MomentMatrix {
        index: n.clone(),
        matrix: Matrix::new(size, size, data)?,
    })
}

/// Classifies a square matrix. Exact mode decides by `det != 0`; float mode
/// compares the reciprocal condition number of the equilibrated matrix against
/// the tolerance band.
pub fn classify<S: Scalar>(m: &Matrix<S>, tol: &Tolerance) -> Result<NormalityReport<S>> {
    let det = linalg::det(m, tol)?;
    Ok(match S::MODE {
        ScalarMode::Exact => NormalityReport {
            verdict: if det.is_zero() {
                Normality::Singular
            } else {
                Normality::Normal
            },
            det,
            rcond: None,
        },
        ScalarMode::Float64 => {
            let ratio = linalg::rcond(&m.map(Scalar::to_f64));
            let verdict = if !ratio.is_finite() || ratio < tol.singular {
                Normality::Singular
            } else if ratio <= tol.indeterminate {
                Normality::Indeterminate
            } else {
                Normality::Normal
            };
            NormalityReport {
                verdict,
                det,
                rcond: Some(ratio),
            }
        }
    })
}

pub fn normality<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<NormalityReport<S>> {
    let mm = moment_matrix(sys, n)?;
    classify(&mm.matrix, sys.tolerance())
}

/// `det M_n != 0` (exact) or a float verdict of normal, with the determinant.
pub fn is_normal<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<(bool, S)> {
    let rep = normality(sys, n)?;
    Ok((rep.is_normal(), rep.det))
}

/// Solves `m x = rhs`, mapping singularity to `NotNormal` for `index`.
///
/// Float mode refuses only a `Singular` verdict; indeterminate systems are
/// still solved so callers can compare them.
fn solve_normal<S: Scalar>(
    m: &Matrix<S>,
    rhs: &[S],
    tol: &Tolerance,
    index: &MultiIndex,
) -> Result<Vec<S>> {
    let not_normal = |det: String| Error::NotNormal {
        index: index.clone(),
        det,
    };
    if S::MODE == ScalarMode::Float64 {
        let rep = classify(m, tol)?;
        if rep.verdict == Normality::Singular {
            return Err(not_normal(rep.det.to_literal()));
        }
    }
    linalg::solve(m, rhs, tol).map_err(|e| match e {
        Error::Singular { det } => not_normal(det),
        other => other,
    })
}

/// The monic Type II polynomial `P_n`, with leading monomial at position `|n|`.
pub fn type2<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<BiPoly<S>> {
    let mm = moment_matrix(sys, n)?;
    let top = unpair(n.modulus());
    let rhs = columns(n)
        .into_iter()
        .map(|(j, l)| sys.moment_at(j, add_pairs(top, unpair(l))).map(|v| -v))
        .collect::<Result<Vec<S>>>()?;
    let mut coeffs = solve_normal(&mm.matrix.transpose(), &rhs, sys.tolerance(), n)?;
    coeffs.push(S::one());
    Ok(BiPoly::from_coeffs(coeffs))
}

/// The Type I set of `n`; `A_{n,j}` has its top position below `n_j`.
pub fn type1<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<TypeISet<S>> {
    check_len(sys, n)?;
    if n.modulus() == 0 {
        return Err(Error::EmptyIndex);
    }
    let mm = moment_matrix(sys, n)?;
    let size = mm.size();
    let mut rhs = vec![S::zero(); size];
    rhs[size - 1] = S::one();
    let sol = solve_normal(&mm.matrix, &rhs, sys.tolerance(), n)?;
    let mut it = sol.into_iter();
    let polys = n
        .components()
        .iter()
        .map(|&nj| BiPoly::from_coeffs(it.by_ref().take(nj as usize).collect()))
        .collect();
    Ok(TypeISet {
        index: n.clone(),
        polys,
    })
}

/// `<P, Q>_j`, the bilinear extension of the moment functional of measure `j`.
pub fn inner<S: Scalar>(
    sys: &MeasureSystem<S>,
    j: usize,
    p: &BiPoly<S>,
    q: &BiPoly<S>,
) -> Result<S> {
    let mut acc = S::zero();
    for (t1, s1, a) in p.terms() {
        for (t2, s2, b) in q.terms() {
            acc = acc + a.clone() * b.clone() * sys.moment(j, t1 + t2, s1 + s2)?;
        }
    }
    Ok(acc)
}

/// `<P, Q_m> = sum_j <P, A_{m,j}>_j` for a precomputed Type I set.
pub fn pairing_with<S: Scalar>(
    sys: &MeasureSystem<S>,
    p: &BiPoly<S>,
    set: &TypeISet<S>,
) -> Result<S> {
    set.polys
        .iter()
        .enumerate()
        .try_fold(S::zero(), |acc, (j, a)| Ok(acc + inner(sys, j, p, a)?))
}

/// `<P, Q_m>`, evaluated from moments only.
pub fn type1_pairing<S: Scalar>(
    sys: &MeasureSystem<S>,
    p: &BiPoly<S>,
    m: &MultiIndex,
) -> Result<S> {
    pairing_with(sys, p, &type1(sys, m)?)
}

/// `Q(x, y) = sum_j A_j(x, y) w_j(x, y)` in binary64.
pub fn eval_q<S: Scalar>(sys: &MeasureSystem<S>, set: &TypeISet<S>, x: f64, y: f64) -> Result<f64> {
    set.polys.iter().enumerate().try_fold(0.0, |acc, (j, a)| {
        let w = sys.weight(j, x, y)?;
        Ok(acc + a.map(|c| c.to_f64()).eval(&x, &y) * w)
    })
}

/// Memoised solver over one measure system, for checks that revisit indices.
pub struct Mops<'a, S> {
    sys: &'a MeasureSystem<S>,
    p: Mutex<HashMap<MultiIndex, BiPoly<S>>>,
    q: Mutex<HashMap<MultiIndex, TypeISet<S>>>,
}

impl<'a, S: Scalar> Mops<'a, S> {
    pub fn new(sys: &'a MeasureSystem<S>) -> Self {
        Mops {
            sys,
            p: Mutex::default(),
            q: Mutex::default(),
        }
    }

    pub fn system(&self) -> &'a MeasureSystem<S> {
        self.sys
    }

    pub fn type2(&self, n: &MultiIndex) -> Result<BiPoly<S>> {
        if let Some(p) = self.p.lock().unwrap().get(n) {
            return Ok(p.clone());
        }
        let p = type2(self.sys, n)?;
        self.p.lock().unwrap().insert(n.clone(), p.clone());
        Ok(p)
    }

    pub fn type1(&self, n: &MultiIndex) -> Result<TypeISet<S>> {
        if let Some(q) = self.q.lock().unwrap().get(n) {
            return Ok(q.clone());
        }
        let q = type1(self.sys, n)?;
        self.q.lock().unwrap().insert(n.clone(), q.clone());
        Ok(q)
    }

    /// `<P, Q_m>`.
    pub fn pairing(&self, p: &BiPoly<S>, m: &MultiIndex) -> Result<S> {
        pairing_with(self.sys, p, &self.type1(m)?)
    }
}

fn check_uni_len<S: Scalar>(sys: &UniSystem<S>, n: &MultiIndex) -> Result<()> {
    if n.len() != sys.r() {
        return Err(Error::LengthMismatch {
            expected: sys.r(),
            found: n.len(),
        });
    }
    Ok(())
}

/// Univariate block moment matrix: row `(j, i)` for `i < n_j`, column `k < |n|`,
/// entry `m^(j)_{i+k}`.
pub fn uni_moment_matrix<S: Scalar>(sys: &UniSystem<S>, n: &MultiIndex) -> Result<Matrix<S>> {
    check_uni_len(sys, n)?;
    let size = n.modulus() as usize;
    let mut data = Vec::with_capacity(size * size);
    for (j, i) in columns(n) {
        for k in 0..size as u64 {
            data.push(sys.moment(j, i + k)?);
        }
    }
    Matrix::new(size, size, data)
}

pub fn uni_normality<S: Scalar>(sys: &UniSystem<S>, n: &MultiIndex) -> Result<NormalityReport<S>> {
    classify(&uni_moment_matrix(sys, n)?, sys.tolerance())
}

/// Monic univariate Type II polynomial of degree `|n|`.
pub fn uni_type2<S: Scalar>(sys: &UniSystem<S>, n: &MultiIndex) -> Result<UniPoly<S>> {
    let m = uni_moment_matrix(sys, n)?;
    let size = n.modulus();
    let rhs = columns(n)
        .into_iter()
        .map(|(j, i)| sys.moment(j, size + i).map(|v| -v))
        .collect::<Result<Vec<S>>>()?;
    let mut coeffs = solve_normal(&m, &rhs, sys.tolerance(), n)?;
    coeffs.push(S::one());
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Univariate Type I polynomials `A_{n,1}, ..., A_{n,r}` with `deg A_{n,j} < n_j`.
pub fn uni_type1<S: Scalar>(sys: &UniSystem<S>, n: &MultiIndex) -> Result<Vec<UniPoly<S>>> {
    check_uni_len(sys, n)?;
    if n.modulus() == 0 {
        return Err(Error::EmptyIndex);
    }
    let m = uni_moment_matrix(sys, n)?;
    let size = m.rows();
    let mut rhs = vec![S::zero(); size];
    rhs[size - 1] = S::one();
    let sol = solve_normal(&m.transpose(), &rhs, sys.tolerance(), n)?;
    let mut it = sol.into_iter();
    Ok(n.components()
        .iter()
        .map(|&nj| UniPoly::from_coeffs(it.by_ref().take(nj as usize).collect()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{laguerre, BivariateMeasure};
    use crate::scalar::{rational, Rational};

    fn lag_tensor(a: &str, b: &str) -> BivariateMeasure {
        BivariateMeasure::tensor(laguerre(a), laguerre(b))
    }

    #[test]
    fn zero_index() {
        let sys = MeasureSystem::<Rational>::new(vec![lag_tensor("1", "1")]).unwrap();
        let n = MultiIndex::zeros(1);
        assert_eq!(moment_matrix(&sys, &n).unwrap().size(), 0);
        assert!(is_normal(&sys, &n).unwrap().0);
        assert_eq!(type2(&sys, &n).unwrap(), BiPoly::one());
        assert_eq!(type1(&sys, &n), Err(Error::EmptyIndex));
    }

    #[test]
    fn single_condition() {
        let sys = MeasureSystem::<Rational>::new(vec![lag_tensor("1", "1")]).unwrap();
        let n = MultiIndex::from([1]);
        let p = type2(&sys, &n).unwrap();
        assert_eq!(
            p,
            BiPoly::from_terms([(1, 0, rational(1, 1)), (0, 0, rational(-2, 1))])
        );
        let a = type1(&sys, &n).unwrap();
        assert_eq!(a.polys, vec![BiPoly::one()]);
    }

    #[test]
    fn block_layout() {
        let sys = MeasureSystem::<Rational>::new(vec![
            lag_tensor("1", "23/10"),
            lag_tensor("11/5", "17/5"),
        ])
        .unwrap();
        let mm = moment_matrix(&sys, &MultiIndex::from([1, 1])).unwrap();
        // rows: monomials 1, x; columns: (measure 1, 1), (measure 2, 1)
        assert_eq!(mm.matrix.row(0), &[rational(1, 1), rational(1, 1)]);
        assert_eq!(mm.matrix.row(1), &[rational(2, 1), rational(16, 5)]);
    }

    #[test]
    fn type1_shapes() {
        let sys = MeasureSystem::<Rational>::new(vec![
            lag_tensor("1", "23/10"),
            lag_tensor("11/5", "17/5"),
            lag_tensor("1/2", "3"),
        ])
        .unwrap();
        let set = type1(&sys, &MultiIndex::from([2, 4, 1])).unwrap();
        assert!(set.polys[0].top().unwrap() <= 1);
        assert!(set.polys[1].top().unwrap() <= 3);
        assert!(set.polys[2].top().unwrap() == 0);
    }

    #[test]
    fn univariate_examples() {
        let phi = UniSystem::<Rational>::new(vec![laguerre("23/10"), laguerre("17/5")]).unwrap();
        let p = uni_type2(&phi, &MultiIndex::from([1, 0])).unwrap();
        assert_eq!(p.coeffs(), &[rational(-33, 10), rational(1, 1)]);
        let mu = UniSystem::<Rational>::new(vec![laguerre("1"), laguerre("11/5")]).unwrap();
        let p = uni_type2(&mu, &MultiIndex::from([0, 1])).unwrap();
        assert_eq!(p.coeffs(), &[rational(-16, 5), rational(1, 1)]);
        assert_eq!(
            uni_type2(&mu, &MultiIndex::from([0, 0])).unwrap().coeffs(),
            &[rational(1, 1)]
        );
    }

    #[test]
    fn singular_index() {
        let sys = MeasureSystem::<Rational>::new(vec![lag_tensor("1", "1"), lag_tensor("1", "1")])
            .unwrap();
        let n = MultiIndex::from([1, 1]);
        assert!(!is_normal(&sys, &n).unwrap().0);
        assert!(matches!(type2(&sys, &n), Err(Error::NotNormal { .. })));
        assert!(matches!(type1(&sys, &n), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn length_checked() {
        let sys = MeasureSystem::<Rational>::new(vec![lag_tensor("1", "1")]).unwrap();
        assert!(matches!(
            type2(&sys, &MultiIndex::from([1, 1])),
            Err(Error::LengthMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn eval_q_weight() {
        let sys = MeasureSystem::<f64>::new(vec![lag_tensor("1", "23/10")]).unwrap();
        let set = type1(&sys, &MultiIndex::from([1])).unwrap();
        let q = eval_q(&sys, &set, 1.0, 1.0).unwrap();
        let gamma_y = statrs::function::gamma::gamma(3.3);
        let expected = (-1.0f64).exp() * (-1.0f64).exp() / gamma_y;
        assert!((q - expected).abs() < 1e-14, "{q} vs {expected}");
    }
}
