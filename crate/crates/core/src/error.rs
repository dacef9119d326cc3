use thiserror::Error;

/// Errors raised by the algebra kernel and the operator builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("new space is not stable under U_t; the operator formulas are inconsistent")]
    UnstableNewSpace,
    #[error("slopes are already in the typed convention")]
    AlreadyDenormalized,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
