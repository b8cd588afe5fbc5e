use thiserror::Error;

/// Errors raised by the combinatorial and algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("arity mismatch: expected {expected} parts, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("operation requires a nonempty element")]
    Empty,

    #[error("invalid order ideal: {0}")]
    InvalidIdeal(String),

    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch {
        expected: crate::linear::Flavor,
        found: crate::linear::Flavor,
    },

    #[error("not a member: {0}")]
    NotMember(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("series division needs an invertible constant term")]
    NotInvertible,

    #[error("series composition needs an inner series with zero constant term")]
    NonzeroConstant,

    #[error("result is not integral: {0}")]
    NonIntegral(String),

    #[error("size {n} exceeds the configured cap {cap}")]
    SizeCap { n: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}
