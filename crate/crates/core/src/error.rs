use thiserror::Error;

/// Errors raised by the exact-algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("validation error: {0}")]
    Validation(String),

    /// A group is larger than the configured enumeration cap.
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    Resource { order: u128, cap: u64 },

    /// An element or subgroup is not contained in the ambient group.
    #[error("membership error: {0}")]
    Membership(String),

    /// Two independent computations disagree, or an exactness contract broke.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
