use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate symbol `{symbol}` in alphabet `{alphabet}`")]
    DuplicateSymbol { alphabet: String, symbol: String },

    #[error("unknown symbol `{symbol}` for `{object}`")]
    UnknownSymbol { object: String, symbol: String },

    #[error("index {index} out of range for `{object}` of size {size}")]
    OutOfRange {
        object: String,
        index: usize,
        size: usize,
    },

    #[error("type mismatch: expected `{expected}`, found `{found}`")]
    TypeMismatch { expected: String, found: String },

    #[error("ill-typed diagram: {0}")]
    IllTyped(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the empty word is not allowed here")]
    EmptyWord,

    #[error("evaluations disagree: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
