use thiserror::Error;

/// Errors raised by the bound engine and the brute-force oracles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("enumeration of {size} items exceeds the guard of {limit}")]
    GuardExceeded { size: u128, limit: u128 },

    #[error("0 has no multiplicative inverse")]
    ZeroInverse,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("code is not constant-weight {0}")]
    NotConstantWeight(usize),

    #[error("internal arithmetic fault: {0}")]
    Arithmetic(String),

    #[error("pivot limit of {0} exceeded")]
    PivotLimit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
