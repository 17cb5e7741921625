use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A word that does not decompose into `z_k = x^{k-1}y` letters.
    #[error("word `{0}` ends in x and has no mult-index form")]
    NotZForm(String),

    #[error("invalid mult-index: {0}")]
    InvalidIndex(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Problems with the compact binary layout (bad magic, version, truncation).
    #[error("compact format: {0}")]
    Format(String),

    #[error("weight {weight} is outside the supported range {min}..={max}")]
    WeightOutOfRange { weight: u32, min: u32, max: u32 },

    #[error("dense oracle supports at most {limit} columns, system has {columns}")]
    OracleTooLarge { columns: usize, limit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
