use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order {0} (expected 2, 3, 4 or 5)")]
    UnsupportedFieldOrder(usize),

    #[error("invalid combinatorics: {0}")]
    InvalidCombinatorics(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("index {index} out of range (valid: {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("empty monodromy tuple")]
    EmptyTuple,

    #[error("moduli derivation stuck at {0}")]
    Underdetermined(String),

    #[error("moduli derivation: {0}")]
    Derivation(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("resource guard exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
