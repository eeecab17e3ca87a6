use thiserror::Error;

use crate::continuum::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generating sequence has no levels")]
    EmptySequence,
    #[error("level {level} is defined over {found} positions, expected {expected}")]
    SizeMismatch {
        level: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown position `{0}`")]
    UnknownPosition(String),
    #[error("position index {index} outside a carrier of {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("duplicate position id `{0}`")]
    DuplicateId(String),
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("class is defined over {found} positions, carrier has {expected}")]
    ClassMismatch { expected: usize, found: usize },
    #[error("invalid limit partition: {0}")]
    InvalidPartition(String),
    #[error("position `{0}` carries no rational value")]
    NotNumeric(String),
    #[error("carrier of {size} positions exceeds the exhaustive bound {max}; {hint}")]
    TooLarge {
        size: usize,
        max: usize,
        hint: &'static str,
    },
    #[error("graded classes differ in kind or shape")]
    KindMismatch,
    #[error("graded family is not monotone at level {0}")]
    NotMonotone(usize),
    #[error("domain projection needs a family over a pair carrier")]
    NotPairCarrier,
    #[error("class is not connected at level {level}: {part:?} has no edge to the rest")]
    NotConnected { level: usize, part: Vec<usize> },
    #[error("not a motion at level {level}: step {step} ({from} -> {to}) is not related")]
    NotAMotion {
        level: usize,
        step: usize,
        from: usize,
        to: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("value {0} is not a point of the target carrier")]
    OffCarrier(String),
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("metric is invalid: {0}")]
    InvalidMetric(ValidationReport),
    #[error("continuum carries no metric")]
    NoMetric,
}

pub type Result<T> = std::result::Result<T, Error>;
