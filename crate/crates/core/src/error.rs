use crate::seq::Alphabet;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("record '{id}': invalid residue '{symbol}' at position {position} for {alphabet} alphabet")]
    InvalidResidue {
        id: String,
        position: usize,
        symbol: char,
        alphabet: Alphabet,
    },

    #[error("record '{0}' is empty")]
    EmptyRecord(String),

    #[error("input contains no records")]
    NoRecords,

    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("expected {expected} sequence, got {got}")]
    AlphabetMismatch { expected: Alphabet, got: Alphabet },

    #[error("sequence of length {len} is too short (need at least {min})")]
    InsufficientLength { len: usize, min: usize },

    #[error("reference too small: {got} vectors, need at least {min}")]
    ReferenceTooSmall { got: usize, min: usize },

    #[error("measure set mismatch: expected [{expected}], got [{got}]")]
    MeasureMismatch { expected: String, got: String },

    #[error("method set mismatch: {0}")]
    MethodMismatch(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("incompatible sequence for method '{method}' at index {index}: {reason}")]
    IncompatibleSequence {
        method: String,
        index: usize,
        reason: String,
    },

    #[error("landscape is incomplete or inconsistent: {0}")]
    Landscape(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
