use thiserror::Error;

/// Crate-wide error type.
///
/// The three variants correspond to the stable exit codes of the CLI:
/// parse errors (1), validation errors (2), and internal consistency
/// failures (3). Internal failures indicate a bug, never bad user input.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (tangle files, algebra names, weights).
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally well-formed input that violates a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// An internal self-check failed.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
