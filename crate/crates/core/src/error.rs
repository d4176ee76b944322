use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("decision variable {index} = {value} outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("environment index {0} is outside the problem's objective schedule")]
    UnknownEnvironment(usize),

    #[error("unsupported problem: {0}")]
    UnsupportedProblem(String),

    #[error("direction vector has no nonzero component")]
    ZeroDirection,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("generation {0} is past the end of the change schedule")]
    EndOfSchedule(usize),

    #[error("unsupported number of algorithms for the critical-difference table: {0}")]
    UnsupportedTableSize(usize),
}
