use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix needs at least {required} rows, got {rows}")]
    EmptyMatrix { rows: usize, required: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("empty input")]
    EmptyInput,

    #[error("input is not sorted ascending at index {index}")]
    UnsortedInput { index: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("group {group} of {k} received no rows; reduce k or supply custom cut percentiles")]
    EmptyGroup { group: usize, k: usize },

    #[error("{rows} rows are not enough for k = {k}; reduce k")]
    InsufficientRows { rows: usize, k: usize },

    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("malformed CSV in {} at line {line}: {message}", .path.display())]
    MalformedCsv {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("file has no data rows: {}", .0.display())]
    EmptyFile(PathBuf),

    #[error("country key {raw:?} is empty after normalization")]
    EmptyKey { raw: String },

    #[error("source {source_id:?} has no key column {column:?}")]
    MissingKeyColumn { source_id: String, column: String },

    #[error("source {source_id:?} has no column {column:?}")]
    UnknownColumn { source_id: String, column: String },

    #[error("attribute {column:?} is selected from more than one source")]
    AttributeCollision { column: String },

    #[error("no merge source matches input {0:?}")]
    UnmatchedSource(String),

    #[error("source {source_id:?} has more than one row for key {key:?}")]
    DuplicateKeyWithinSource { source_id: String, key: String },

    #[error("column {0:?} has no parseable values")]
    AllMissingColumn(String),

    #[error("no records")]
    NoRecords,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input or configuration, as opposed to
    /// failures while computing or writing results.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::EmptyMatrix { .. }
                | Error::DimensionMismatch { .. }
                | Error::NonFinite { .. }
                | Error::EmptyInput
                | Error::UnsortedInput { .. }
                | Error::InvalidConfig(_)
                | Error::InsufficientRows { .. }
                | Error::FileNotFound(_)
                | Error::MalformedCsv { .. }
                | Error::EmptyFile(_)
                | Error::EmptyKey { .. }
                | Error::MissingKeyColumn { .. }
                | Error::UnknownColumn { .. }
                | Error::AttributeCollision { .. }
                | Error::UnmatchedSource(_)
                | Error::DuplicateKeyWithinSource { .. }
                | Error::AllMissingColumn(_)
        )
    }
}
