use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong while reading a design file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    MalformedHeader(String),
    InvalidInteger(String),
    NonPrimeLevels(u64),
    LevelOutOfRange { value: u64, levels: usize },
    RowLength { expected: usize, found: usize },
    DuplicateRow { first_line: usize },
    RowCount { expected: usize, found: usize },
    EmptyDesign,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing \"n m s\" header line"),
            ParseErrorKind::MalformedHeader(line) => {
                write!(f, "malformed header {line:?}, expected \"n m s\"")
            }
            ParseErrorKind::InvalidInteger(tok) => write!(f, "invalid integer {tok:?}"),
            ParseErrorKind::NonPrimeLevels(s) => {
                write!(f, "number of levels {s} is not a supported prime (2..=97)")
            }
            ParseErrorKind::LevelOutOfRange { value, levels } => {
                write!(f, "level {value} out of range 0..{levels}")
            }
            ParseErrorKind::RowLength { expected, found } => {
                write!(f, "row has {found} entries, expected {expected}")
            }
            ParseErrorKind::DuplicateRow { first_line } => {
                write!(f, "duplicate row (first seen on line {first_line})")
            }
            ParseErrorKind::RowCount { expected, found } => {
                write!(f, "header declares {expected} rows but {found} were found")
            }
            ParseErrorKind::EmptyDesign => write!(f, "a design needs at least one row"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {kind}")]
    Parse {
        line: usize,
        column: usize,
        kind: ParseErrorKind,
    },

    #[error("{0} is not a supported prime number of levels (2..=97)")]
    NotPrime(usize),

    #[error("operands live in different cyclotomic rings (s = {0} and s = {1})")]
    ModulusMismatch(usize, usize),

    #[error("level {level} out of range for {levels} levels")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("factor index {index} out of range for {factors} factors")]
    FactorOutOfRange { index: usize, factors: usize },

    #[error("design has {found} factors, expected {expected}")]
    FactorCount { expected: usize, found: usize },

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid defining equation: {0}")]
    InvalidEquation(String),

    #[error("equation {index} ({equation}) is linearly dependent on the previous ones")]
    DependentEquation { index: usize, equation: String },

    #[error("equation {index} ({equation}) is inconsistent with the previous ones")]
    InconsistentEquation { index: usize, equation: String },

    #[error("{what} requires {size} points, above the configured bound of {bound}")]
    BoundExceeded { what: &'static str, size: u128, bound: u128 },

    #[error("not an orthogonal array of strength 2")]
    NotOrthogonalArray,

    #[error("projection onto factors {0:?} is not a uniformly replicated full factorial")]
    NonUniformProjection(Vec<usize>),

    #[error("square is not rank 1: {0}")]
    NotRankOne(String),

    #[error("designs have different shapes: {0}")]
    ShapeMismatch(String),
}
