//! Dense polynomials: bivariate indexed by Cantor position, univariate by power.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::multiindex::{pair, shift_x, shift_y, unpair};
use crate::scalar::Scalar;

/// Bivariate polynomial; `coeffs[z]` multiplies the monomial `x^t y^s` with `(t, s) = unpair(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(t: u64, s: u64) -> Self {
        let z = pair(t, s) as usize;
        let mut coeffs = vec![S::zero(); z + 1];
        coeffs[z] = S::one();
        BiPoly { coeffs }
    }

    /// Builds a polynomial from `(t, s, c)` terms; repeated monomials add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, u64, S)>) -> Self {
        let mut coeffs: Vec<S> = Vec::new();
        for (t, s, c) in terms {
            let z = pair(t, s) as usize;
            if coeffs.len() <= z {
                coeffs.resize(z + 1, S::zero());
            }
            coeffs[z] = coeffs[z].clone() + c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient at Cantor position `z` (zero beyond the stored range).
    pub fn coeff(&self, z: usize) -> S {
        self.coeffs.get(z).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeff_of(&self, t: u64, s: u64) -> S {
        self.coeff(pair(t, s) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Position of the leading monomial, `None` for the zero polynomial.
    pub fn top(&self) -> Option<u64> {
        self.coeffs.len().checked_sub(1).map(|z| z as u64)
    }

    pub fn mdeg(&self) -> Option<(u64, u64)> {
        self.top().map(unpair)
    }

    /// Total degree of the leading monomial.
    pub fn deg(&self) -> Option<u64> {
        self.mdeg().map(|(t, s)| t + s)
    }

    pub fn leading_coeff(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Nonzero terms as `(t, s, c)` in ascending Cantor position.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(z, c)| {
                let (t, s) = unpair(z as u64);
                (t, s, c)
            })
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|z| self.coeff(z) + other.coeff(z)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|z| self.coeff(z) - other.coeff(z)).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &S, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..n)
                .map(|z| self.coeff(z) + c.clone() * other.coeff(z))
                .collect(),
        )
    }

    fn shifted(&self, shift: fn(u64, u64) -> u64) -> Self {
        let Some(top) = self.top() else {
            return Self::zero();
        };
        let (l, m) = unpair(top);
        let mut coeffs = vec![S::zero(); shift(l, m) as usize + 1];
        for (z, c) in self.coeffs.iter().enumerate() {
            let (t, s) = unpair(z as u64);
            coeffs[shift(t, s) as usize] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul_x(&self) -> Self {
        self.shifted(shift_x)
    }

    pub fn mul_y(&self) -> Self {
        self.shifted(shift_y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(u64, u64, S)> = Vec::new();
        for (t1, s1, a) in self.terms() {
            for (t2, s2, b) in other.terms() {
                out.push((t1 + t2, s1 + s2, a.clone() * b.clone()));
            }
        }
        Self::from_terms(out)
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.terms().fold(S::zero(), |acc, (t, s, c)| {
            acc + c.clone() * pow(x, t) * pow(y, s)
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// `{"terms": [{"t":..,"s":..,"c":".."}, ...]}` in descending Cantor position.
    pub fn to_json(&self) -> PolyJson {
        let mut terms: Vec<TermJson> = self
            .terms()
            .map(|(t, s, c)| TermJson {
                t,
                s,
                c: c.to_literal(),
            })
            .collect();
        terms.reverse();
        PolyJson { terms }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub t: u64,
    pub s: u64,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

fn pow<S: Scalar>(base: &S, e: u64) -> S {
    (0..e).fold(S::one(), |acc, _| acc * base.clone())
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &str, monomial: &str) -> fmt::Result {
    let (negative, mag) = match coeff.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, coeff),
    };
    let sign = match (first, negative) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    let unit = mag == "1" || mag == "1.0";
    match (monomial.is_empty(), unit) {
        (true, _) => write!(f, "{sign}{mag}"),
        (false, true) => write!(f, "{sign}{monomial}"),
        (false, false) => write!(f, "{sign}{mag}*{monomial}"),
    }
}

fn power(var: &str, e: u64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

/// Renders as `x^2*y - 3/2*x + 1`, leading monomial first.
impl<S: Scalar> fmt::Display for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (i, (t, s, c)) in terms.iter().rev().enumerate() {
            let mono: Vec<String> = [power("x", *t), power("y", *s)]
                .into_iter()
                .flatten()
                .collect();
            write_term(f, i == 0, &c.to_literal(), &mono.join("*"))?;
        }
        Ok(())
    }
}

/// Univariate polynomial with ascending-power coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Coefficients paired with their power, highest first, as literals.
    pub fn to_literals(&self) -> Vec<String> {
        self.coeffs.iter().map(S::to_literal).collect()
    }
}

impl<S: Scalar> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(
                f,
                first,
                &c.to_literal(),
                &power("x", k as u64).unwrap_or_default(),
            )?;
            first = false;
        }
        Ok(())
    }
}
