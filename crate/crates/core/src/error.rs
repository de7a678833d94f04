use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    /// A postcondition guaranteed by a counting argument failed to hold.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: msg.into(),
    }
}
