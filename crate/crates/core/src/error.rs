use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}: only 1 <= n <= 4 is handled")]
    UnsupportedDimension(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ideal is not zero-dimensional (axis {axis} has no pure power)")]
    NotZeroDimensional { axis: usize },
    #[error("unit ideal: the threshold is +infinity")]
    UnitIdeal,
    #[error("multiplicity oracle did not stabilize with k0 <= {budget}")]
    OracleBudgetExceeded { budget: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { offset: usize, name: String },
    #[error("negative exponent at offset {offset}")]
    NegativeExponent { offset: usize },
    #[error("degenerate germ: {0}")]
    DegenerateGerm(String),
    #[error("generator {index} (`{generator}`) is not a single term")]
    NotMonomializable { index: usize, generator: String },
    #[error("restriction is identically zero on the sampled plane")]
    DegenerateRestriction,
    #[error("could not sample a full-rank plane after {attempts} attempts")]
    Sampling { attempts: usize },
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("germ does not have an isolated singularity: {0}")]
    NotIsolated(String),
    #[error("integer overflow in exact geometry")]
    Overflow,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
