use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing value at line {line}, column {column}")]
    MissingValue { line: usize, column: usize },

    #[error("non-numeric value {value:?} at line {line}, column {column}")]
    NonNumeric {
        line: usize,
        column: usize,
        value: String,
    },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("line {line} has {found} columns, expected {expected}")]
    InconsistentArity {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("class column {column} out of range for {columns} columns")]
    BadClassColumn { column: usize, columns: usize },

    #[error("split of {examples} examples at test fraction {test_fraction} leaves an empty side")]
    TooSmall { examples: usize, test_fraction: f64 },

    #[error("invalid split plan: {0}")]
    InvalidPlan(String),

    #[error("repetition {repetition} out of range (plan has {repetitions})")]
    RepetitionOutOfRange {
        repetition: usize,
        repetitions: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{metric} requires non-negative inputs, got {value} at index {index}")]
    DomainViolation {
        metric: &'static str,
        index: usize,
        value: f64,
    },

    #[error("unknown metric {0:?}")]
    UnknownMetric(String),

    #[error("{metric} does not belong to the {family} family")]
    WrongFamily {
        metric: &'static str,
        family: &'static str,
    },

    #[error("k must be in 1..={available}, got {k}")]
    InvalidK { k: usize, available: usize },

    #[error("noise level {0} outside [0, 1)")]
    InvalidNoiseLevel(f64),

    #[error("length mismatch: {actual} actual vs {predicted} predicted labels")]
    LengthMismatch { actual: usize, predicted: usize },

    #[error("class id {class} out of range for {n_classes} classes")]
    ClassOutOfRange { class: usize, n_classes: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
