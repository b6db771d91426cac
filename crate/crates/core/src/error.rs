//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A matrix that must be inverted is numerically singular.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// An internal numerical consistency check failed (e.g. an expectation
    /// value with a non-negligible imaginary part).
    #[error("internal consistency: {0}")]
    InternalConsistency(String),

    /// A conditional-probability table has a zero row sum.
    #[error("degenerate table: {0}")]
    DegenerateTable(String),

    /// A configuration file or flag is malformed; `key` names the offender.
    #[error("config error for key `{key}`: {message}")]
    Config { key: String, message: String },

    /// Filesystem failure while reading inputs or writing reports.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Process exit status for the CLI: 2 for configuration problems, 3 for
    /// i/o failures, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidArgument(_) => 2,
            Error::Io(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
