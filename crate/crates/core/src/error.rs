use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=20")]
    InvalidDegree(u32),

    #[error("reduction polynomial {poly:#x} rejected: {reason}")]
    InvalidPolynomial { poly: u32, reason: String },

    #[error("element {bits:#x} does not belong to GF(2^{m})")]
    ElementOutOfRange { bits: u32, m: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("ring element is not a unit")]
    NotInvertible,

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("refusing infeasible computation: {0}")]
    Infeasible(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("share set cannot reconstruct the secret")]
    ReconstructionFailure,

    #[error("secret coordinate is degenerate: {0}")]
    DegenerateCoordinate(String),

    #[error("cache file error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
