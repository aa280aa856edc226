//! Bivariate multiple orthogonal polynomials from moment data.
//!
//! Type I and Type II polynomials are computed by solving block moment systems,
//! in exact rational arithmetic by default. The recurrence, biorthogonality and
//! product identities they satisfy are exposed as executable checks.

pub mod error;
pub mod linalg;
pub mod measures;
pub mod mop;
pub mod multiindex;
pub mod poly;
pub mod product;
pub mod relations;
pub mod scalar;

pub use error::{Error, Result};
pub use multiindex::{canonical_path, pair, unpair, MultiIndex, Path};
pub use poly::{BiPoly, UniPoly};
pub use scalar::{Rational, Scalar, ScalarMode, Tolerance};
