use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("algebra is not Adams connected: {0}")]
    NotAdamsConnected(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("nonzero differential")]
    NonzeroDifferential,
    #[error("not finite dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("not connected graded: {0}")]
    NotConnected(String),
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
