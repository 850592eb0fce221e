use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {modulus}")]
    NotInvertible { a: i128, modulus: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis is singular")]
    SingularBasis,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid projection axes ({0}, {1})")]
    InvalidAxes(usize, usize),
    #[error("modulus {modulus} exceeds the pairwise-scan cap {cap}")]
    CapExceeded { modulus: u64, cap: u64 },
    #[error("parameter {param} out of range for family {family}")]
    ParamOutOfRange { family: String, param: i64 },
    #[error("cache I/O failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt cache record on line {line}: {reason}")]
    CorruptRecord { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
