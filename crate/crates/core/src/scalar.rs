//! Scalar fields: exact rationals over big integers, and binary64 floats.
//!
//! All solvers are generic over [`Scalar`]. A computation never mixes the two
//! modes; the mode is fixed by the measure system it runs against.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float64,
}

/// Thresholds used in float mode. Ignored in exact mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// A pivot with `|pivot| <= singular * max_row_norm` is treated as zero.
    pub singular: f64,
    /// Normalised determinants in `[singular, indeterminate]` yield an indeterminate verdict.
    pub indeterminate: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            singular: 1e-12,
            indeterminate: 1e-6,
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: ScalarMode;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Serialised form used in all JSON output.
    fn to_literal(&self) -> String;

    fn det(m: &Matrix<Self>, tol: &Tolerance) -> Result<Self>;

    fn solve(m: &Matrix<Self>, rhs: &[Self], tol: &Tolerance) -> Result<Vec<Self>>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn is_exact() -> bool {
        Self::MODE == ScalarMode::Exact
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_literal(&self) -> String {
        format_rational(self)
    }

    fn det(m: &Matrix<Self>, _tol: &Tolerance) -> Result<Self> {
        linalg::det_bareiss(m)
    }

    fn solve(m: &Matrix<Self>, rhs: &[Self], _tol: &Tolerance) -> Result<Vec<Self>> {
        linalg::solve_exact(m, rhs)
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_literal(&self) -> String {
        format!("{self:?}")
    }

    fn det(m: &Matrix<Self>, _tol: &Tolerance) -> Result<Self> {
        linalg::det_lu(m)
    }

    fn solve(m: &Matrix<Self>, rhs: &[Self], tol: &Tolerance) -> Result<Vec<Self>> {
        linalg::solve_lu(m, rhs, tol.singular)
    }
}

/// `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"3"`, `"-7/2"`, `"2.2"` or `"1e-3"` into an exact rational.
///
/// Decimal literals are converted digit by digit, so `"3.4"` is exactly `17/5`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseScalar {
        literal: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Relative tolerance used when float-mode verifications compare against zero.
pub const VERIFY_RTOL: f64 = 1e-8;

/// Exact mode: `x == 0`. Float mode: `|x| <= VERIFY_RTOL * max(scale, 1)`.
pub fn negligible<S: Scalar>(x: &S, scale: f64) -> bool {
    match S::MODE {
        ScalarMode::Exact => x.is_zero(),
        ScalarMode::Float64 => x.to_f64().abs() <= VERIFY_RTOL * scale.max(1.0),
    }
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
