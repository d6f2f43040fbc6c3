use thiserror::Error;

/// Failures reported by the library. Input errors are recoverable; contract
/// violations indicate a caller passing data that breaks a documented precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid range: {0}")]
    Range(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Verma condition l_i - l_j - i + j = r fails: {0}")]
    VermaCondition(String),
    #[error("shift is not subordinate: {0}")]
    NotSubordinate(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by bad user input (as opposed to internal bugs).
    pub fn is_input(&self) -> bool {
        !matches!(self, Error::Contract(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
