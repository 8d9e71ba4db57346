use thiserror::Error;

/// Errors and non-answers produced by the calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    /// The question is outside what the catalogue and solver can settle.
    #[error("unknown: {0}")]
    Unknown(String),
}

impl CalcError {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        CalcError::Parse { pos, msg: msg.into() }
    }

    pub fn unknown(msg: impl Into<String>) -> Self {
        CalcError::Unknown(msg.into())
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, CalcError::Unknown(_))
    }
}

pub type Result<T> = std::result::Result<T, CalcError>;
