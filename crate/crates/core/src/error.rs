use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// The variants line up with the exit-code contract of the command line tool:
/// `Dimension`, `Input` and `Parse` are input failures, the rest are domain failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Dimension(_) | Error::Input(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
