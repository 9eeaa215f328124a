//! Error type shared by the algebra layer.

use thiserror::Error;

/// Failures of exact algebraic operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` is not invertible but appears with a negative exponent")]
    NegativePower(String),
    #[error("operands live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("`{0}` is not a unit")]
    NotAUnit(String),
    #[error("coefficient {0} is not 2-integral")]
    NotTwoIntegral(String),
    #[error("element is not homogeneous")]
    MixedWeight,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Other(String),
}

/// Result alias for the algebra layer.
pub type AlgResult<T> = Result<T, AlgebraError>;
