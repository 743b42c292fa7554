//! Crate-wide error type and result alias.

use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// `Validation` and `CsvData` signal bad input (CLI exit code 1);
/// `Internal` signals a broken invariant that valid input cannot trigger
/// (CLI exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("{0}")]
    Validation(String),

    /// A CSV cell or row failed validation; `line` is 1-based and counts
    /// the header line.
    #[error("line {line}, column {column}: {message}")]
    CsvData {
        line: u64,
        column: String,
        message: String,
    },

    /// Consistency failure that valid input cannot produce.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Validation(_) | Error::CsvData { .. } | Error::Io(_) => 1,
            Error::Internal(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
