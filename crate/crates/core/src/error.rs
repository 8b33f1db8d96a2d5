use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// The computation needs roots that do not exist in the session field.
    #[error("extension needed: adjoin a root of {polynomial} ({reason})")]
    ExtensionNeeded { polynomial: String, reason: String },
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn extension(polynomial: impl ToString, reason: impl Into<String>) -> Self {
        Error::ExtensionNeeded { polynomial: polynomial.to_string(), reason: reason.into() }
    }
}
