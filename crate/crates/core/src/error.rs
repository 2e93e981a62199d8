use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("outside colouring domain: {0}")]
    Domain(String),

    #[error("arity mismatch: expected {expected}-subsets, got a set of size {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// The finite instance does not admit a threshold classification.
    #[error("unclassifiable: {0}")]
    Unclassifiable(String),

    #[error("colouring is not constant: {0}")]
    NotConstant(String),

    /// A node budget ran out before the search was complete; the answer is
    /// inconclusive rather than negative.
    #[error("search budget exhausted after {explored} nodes")]
    BudgetExceeded { explored: u64 },

    /// An internally re-checked postcondition failed.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
