use thiserror::Error;

/// Errors raised by the workbench. Axiom violations are not errors; checkers
/// return them as report content.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a complex: composite of consecutive differentials is nonzero ({0})")]
    NotAComplex(String),

    #[error("ring is not Artinian: {0}")]
    NotArtinian(String),

    #[error("incompatible coefficient rings: {0}")]
    RingMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degree or level {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
