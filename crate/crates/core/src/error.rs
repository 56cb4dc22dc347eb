use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a precondition or a type invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Malformed text input.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The base graph contains a 3-cycle or a 4-cycle.
    #[error("girth violation: {0} contains a 3-cycle or 4-cycle")]
    GirthViolation(String),

    /// A constructed object failed its own post-condition check.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
