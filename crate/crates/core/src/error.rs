use thiserror::Error;

use crate::multiindex::MultiIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("multi-indices are not componentwise comparable: {0} is not <= {1}")]
    NotComparable(MultiIndex, MultiIndex),

    #[error("multi-index length {found} does not match system size {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The determinant (or the offending pivot in float mode) is carried as a string.
    #[error("singular matrix (det = {det})")]
    Singular { det: String },

    #[error("multi-index {index} is not normal (det M = {det})")]
    NotNormal { index: MultiIndex, det: String },

    #[error("type I polynomials are undefined for the zero multi-index")]
    EmptyIndex,

    #[error("moment table of measure {measure} exhausted at order ({t},{s})")]
    TableExhausted { measure: usize, t: u64, s: u64 },

    #[error("measure index {index} out of range (system has {len} measures)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("negative Laguerre exponent at {path}: {value}")]
    NegativeAlpha { path: String, value: String },

    #[error("measure {measure} has no weight evaluator")]
    NoWeightEvaluator { measure: usize },

    #[error("invalid chain: {0}")]
    ChainInvalid(String),

    #[error("invalid path: {0}")]
    PathInvalid(String),

    #[error("index {index} too small for the recurrence: component {component} must exceed degree {degree}")]
    IndexTooSmall {
        index: MultiIndex,
        component: usize,
        degree: u64,
    },

    #[error("pairing surplus is negative: |v~| = {tilde} < pi(|n|,|m|) = {target}")]
    SurplusNegative { tilde: u64, target: u64 },

    #[error("invalid product multi-index: {0}")]
    BadV(String),

    #[error("univariate factor determinant vanishes while det M_v = {det}")]
    DivisionByZeroFactor { det: String },

    #[error("invalid number literal {literal:?}")]
    ParseScalar { literal: String },
}

impl Error {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
