use thiserror::Error;

use crate::hset::HSet;

pub type Result<T> = std::result::Result<T, FmError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FmError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An automorphism was applied to an atom outside its domain.
    #[error("map is not defined on {0}")]
    IncompleteMap(String),

    /// The finite structure is too small to absorb the extension. This is a
    /// saturation failure, not a contradiction.
    #[error("no extension: {0}")]
    NoExtension(String),

    /// A map breaks the structure the model's group must preserve.
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    #[error("{0}")]
    NotASupport(String),

    #[error("orbit budget exhausted after {} elements", partial.len())]
    OrbitBudget { partial: Vec<HSet> },

    #[error(transparent)]
    Core(#[from] finlab_core::Error),
}

impl FmError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        FmError::InvalidInput(msg.into())
    }
}
