//! Exact arithmetic over ℚ and ℚ(√−1): sparse multivariate polynomials,
//! dense matrices, and the symbolic linear algebra the rest of the crate
//! builds on (determinants of polynomial matrices, exact division, perfect
//! square roots, linear substitution).
//!
//! Nothing in this module touches floating point.

mod coeff;
mod dense;
mod gaussian;
mod matrix;
mod poly;
pub mod univariate;

use thiserror::Error;

pub use coeff::{parse_rational, rational_sqrt, rational_to_string, Coeff};
pub use gaussian::GaussianRational;
pub use matrix::{poly_det, Mat, PolyMatrix};
pub use poly::{exact_divide, linear_substitute, poly_sqrt, Monomial, MultiPoly, MAX_ARITY};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("polynomial is not a perfect square")]
    NotAPerfectSquare,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for a small rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for an integer-valued rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
