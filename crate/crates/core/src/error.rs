use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("invalid-argument: {0}")]
    InvalidArgument(String),
    #[error("resource-limit: {0}")]
    ResourceLimit(String),
    /// A totient table was too small for the requested evaluation.
    #[error("precondition: totient table limit {have} is below the required {need}")]
    TableTooSmall { have: usize, need: usize },
    #[error("invariant-violation: {0}")]
    InvariantViolation(String),
}

impl GridError {
    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            GridError::InvalidArgument(_) => "invalid-argument",
            GridError::ResourceLimit(_) => "resource-limit",
            GridError::TableTooSmall { .. } => "precondition",
            GridError::InvariantViolation(_) => "invariant-violation",
        }
    }
}

pub type Result<T> = std::result::Result<T, GridError>;
