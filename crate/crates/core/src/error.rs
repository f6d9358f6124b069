use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("sequence index {index} is beyond the {len}-term list prefix")]
    ListExhausted { index: usize, len: usize },

    #[error("reciprocal of zero sequence term at index {index}")]
    ZeroTerm { index: usize },

    #[error("zero entry at ({n}, {k})")]
    ZeroEntry { n: usize, k: usize },

    #[error("zero diagonal entry at row {index}")]
    ZeroDiagonal { index: usize },

    #[error("row {n} is outside the {rows} stored rows")]
    RowOutOfRange { n: usize, rows: usize },

    #[error("window has {rows} rows, at least {required} required")]
    WindowTooSmall { rows: usize, required: usize },

    #[error("size mismatch: {left} rows vs {right} rows")]
    SizeMismatch { left: usize, right: usize },

    #[error("series truncated at {available} terms, {needed} needed")]
    Truncation { needed: usize, available: usize },

    #[error("{cells} identity instances exceed the limit of {limit}")]
    TooManyCells { cells: u64, limit: u64 },

    #[error("{0}")]
    Invalid(String),

    #[error("triangle file schema: {0}")]
    Schema(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
