//! Dense matrices with determinant and linear solve.
//!
//! Exact mode uses fraction-free (Bareiss) elimination for determinants and
//! rational Gauss elimination for solves. Float mode equilibrates rows and columns
//! by powers of two, then uses LU with partial pivoting.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Rows reordered so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(S::to_literal).collect())
            .collect()
    }
}

/// Determinant in the scalar's own mode. The 0x0 determinant is 1.
pub fn det<S: Scalar>(m: &Matrix<S>, tol: &Tolerance) -> Result<S> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    S::det(m, tol)
}

/// Solves `m x = rhs`.
pub fn solve<S: Scalar>(m: &Matrix<S>, rhs: &[S], tol: &Tolerance) -> Result<Vec<S>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    S::solve(m, rhs, tol)
}

/// Exact determinant: rows are scaled to integers, then reduced fraction-free.
pub fn det_bareiss(m: &Matrix<Rational>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        scale *= lcm;
    }
    let d = bareiss_int(a);
    Ok(Rational::new(d, scale))
}

/// Fraction-free Gaussian elimination on an integer matrix.
pub fn bareiss_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact Gauss elimination; the first nonzero entry of each column is the pivot.
pub fn solve_exact(m: &Matrix<Rational>, rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Err(Error::Singular { det: "0".into() });
        };
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

struct Lu {
    lu: Vec<Vec<f64>>,
    perm_sign: f64,
    singular_pivot: Option<f64>,
    rhs: Vec<f64>,
}

fn lu_factor(m: &Matrix<f64>, rhs: Option<&[f64]>, tol: f64) -> Lu {
    let n = m.rows;
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut b: Vec<f64> = rhs.map(<[f64]>::to_vec).unwrap_or_default();
    let max_row = (0..n)
        .map(|i| m.row(i).iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
        .fold(0.0f64, f64::max);
    let threshold = tol * max_row;
    let mut sign = 1.0;
    let mut singular_pivot = None;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        if p != k {
            a.swap(k, p);
            if !b.is_empty() {
                b.swap(k, p);
            }
            sign = -sign;
        }
        let pivot = a[k][k];
        if pivot.abs() <= threshold || pivot == 0.0 {
            singular_pivot.get_or_insert(pivot);
            continue;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            a[i][k] = f;
            for j in k + 1..n {
                a[i][j] -= f * a[k][j];
            }
            if !b.is_empty() {
                b[i] -= f * b[k];
            }
        }
    }
    Lu {
        lu: a,
        perm_sign: sign,
        singular_pivot,
        rhs: b,
    }
}

/// Product of the partial-pivot LU pivots.
pub fn det_lu(m: &Matrix<f64>) -> Result<f64> {
    let f = lu_factor(m, None, 0.0);
    Ok(f.perm_sign * (0..m.rows).map(|i| f.lu[i][i]).product::<f64>())
}

/// Partial-pivot LU solve on the equilibrated system.
///
/// A pivot at or below `tol * max_row_norm` of the equilibrated matrix is singular.
pub fn solve_lu(m: &Matrix<f64>, rhs: &[f64], tol: f64) -> Result<Vec<f64>> {
    let eq = equilibrate(m);
    let b: Vec<f64> = rhs.iter().zip(&eq.row_scale).map(|(v, r)| v * r).collect();
    let y = solve_lu_raw(&eq.matrix, &b, tol)?;
    Ok(y.iter().zip(&eq.col_scale).map(|(v, c)| v * c).collect())
}

fn solve_lu_raw(m: &Matrix<f64>, rhs: &[f64], tol: f64) -> Result<Vec<f64>> {
    let n = m.rows;
    let f = lu_factor(m, Some(rhs), tol);
    if let Some(p) = f.singular_pivot {
        return Err(Error::Singular {
            det: format!("{p:?}"),
        });
    }
    let mut x = f.rhs;
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= f.lu[i][j] * x[j];
        }
        x[i] = s / f.lu[i][i];
    }
    Ok(x)
}

/// `diag(row_scale) * m * diag(col_scale)` with power-of-two scales, so the
/// scaling itself is exact.
#[derive(Debug, Clone)]
pub struct Equilibrated {
    pub matrix: Matrix<f64>,
    pub row_scale: Vec<f64>,
    pub col_scale: Vec<f64>,
}

/// Alternating row and column scaling towards unit max-norm.
pub fn equilibrate(m: &Matrix<f64>) -> Equilibrated {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut row_scale = vec![1.0; r];
    let mut col_scale = vec![1.0; c];
    let pow2 = |max: f64| {
        if max > 0.0 && max.is_finite() {
            (-max.log2().round()).exp2()
        } else {
            1.0
        }
    };
    for _ in 0..4 {
        for j in 0..c {
            let f = pow2((0..r).map(|i| a.get(i, j).abs()).fold(0.0, f64::max));
            col_scale[j] *= f;
            for i in 0..r {
                a.data[i * c + j] *= f;
            }
        }
        for i in 0..r {
            let f = pow2(a.row(i).iter().fold(0.0f64, |acc, x| acc.max(x.abs())));
            row_scale[i] *= f;
            for v in &mut a.data[i * c..(i + 1) * c] {
                *v *= f;
            }
        }
    }
    Equilibrated {
        matrix: a,
        row_scale,
        col_scale,
    }
}

/// Reciprocal 1-norm condition number of the equilibrated matrix, in `[0, 1]`.
///
/// Returns 1 for the empty matrix and 0 when elimination meets an exact zero pivot.
pub fn rcond(m: &Matrix<f64>) -> f64 {
    let n = m.rows;
    if n == 0 {
        return 1.0;
    }
    let a = equilibrate(m).matrix;
    let norm = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut inv_norm = 0.0f64;
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        match solve_lu_raw(&a, &e, 0.0) {
            Ok(x) => inv_norm = inv_norm.max(x.iter().map(|v| v.abs()).sum()),
            Err(_) => return 0.0,
        }
    }
    let r = 1.0 / (norm * inv_norm);
    if r.is_finite() {
        r
    } else {
        0.0
    }
}
