use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum UcsError {
    #[error("input has {got} dimensions, rule expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("rule {0} is not a live member of the population")]
    NotInPopulation(usize),

    #[error("correct set is empty")]
    EmptyCorrectSet,

    #[error("dataset {path}: {kind}")]
    Dataset { path: PathBuf, kind: DatasetError },

    #[error("snapshot line {line}: {msg}")]
    Snapshot { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DatasetError {
    #[error("file is empty")]
    Empty,
    #[error("need at least 2 data rows, found {0}")]
    TooFewRows(usize),
    #[error("row {row} has {got} columns, header has {expected}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("only one class label present")]
    SingleClass,
}

pub type Result<T> = std::result::Result<T, UcsError>;
