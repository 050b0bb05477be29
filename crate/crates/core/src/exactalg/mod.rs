//! Exact coefficient arithmetic.
//!
//! Arbitrary-precision rationals, sparse multivariate polynomials and rational
//! functions over the rationals, Laurent polynomials in `z` over either base
//! field, and a sampling-based subtraction-free certificate.

mod certify;
mod laurent;
mod parse;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;

pub use certify::{
    certify_subtraction_free, SfCertificate, SAMPLE_COUNT, SAMPLE_SEED, SAMPLE_VALUES,
};
pub use laurent::LaurentPoly;
pub use poly::{natural_cmp, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::Rational;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` is not bound at the evaluation point")]
    UnboundVariable(String),
    #[error("variable `{0}` must be bound to a positive rational")]
    NonPositiveCoordinate(String),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("the zero function has no subtraction-free certificate")]
    ZeroInput,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A commutative field with exact arithmetic.
///
/// Method names avoid the `std::ops` names so that implementors can also
/// provide operator overloads without ambiguity.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse; errors on zero.
    fn inverse(&self) -> Result<Self, AlgError>;
    fn divide(&self, rhs: &Self) -> Result<Self, AlgError> {
        Ok(self.times(&rhs.inverse()?))
    }
}
