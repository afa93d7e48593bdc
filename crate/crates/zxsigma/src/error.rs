use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact division failed: {0} does not divide every coefficient")]
    ExactDivision(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero vector has no leading term")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("exponent vectors coincide, not a binomial")]
    NotABinomial,
    #[error("character is not reflexive prime")]
    NotReflexivePrime,
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
