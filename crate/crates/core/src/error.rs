use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("trace is not 1 (got {0})")]
    BadTrace(f64),

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("enumeration of {0} outcome strings exceeds the cap")]
    EnumerationCap(u128),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
