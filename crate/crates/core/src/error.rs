use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto a stable exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (bad edge, missing face, empty graph, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Text input that could not be parsed. Lines and columns are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The input is valid but exceeds a size limit of this implementation.
    #[error("capability limit: {0}")]
    Capability(String),

    /// An operation was called outside its precondition.
    #[error("precondition violated: {message}")]
    Precondition {
        message: String,
        /// Dimension of the matching complex, when that is what was wrong.
        actual_dim: Option<isize>,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition {
            message: msg.into(),
            actual_dim: None,
        }
    }

    pub(crate) fn wrong_dimension(expected: isize, actual: isize) -> Self {
        Error::Precondition {
            message: format!("matching complex has dimension {actual}, expected {expected}"),
            actual_dim: Some(actual),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
