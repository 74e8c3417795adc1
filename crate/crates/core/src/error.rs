use thiserror::Error;

/// Errors produced by the library. The CLI maps [`Error::is_precondition`]
/// failures to exit code 2 and everything else to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain too large: {what} needs {required} evaluations, cap is {cap}")]
    DomainTooLarge { what: String, required: u128, cap: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("field mismatch: p = {left} vs p = {right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for failures caused by the caller's inputs or caps, as opposed
    /// to internal faults.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
