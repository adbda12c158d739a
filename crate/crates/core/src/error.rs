use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: expected q={expected}, got q={got}")]
    FieldMismatch { expected: u32, got: u32 },
    #[error("element does not belong to group {0}")]
    GroupMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical check failed: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
