use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input lies outside the domain of the operation (p | a for a
    /// Teichmüller lift, log of a non-principal unit, a pole, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested result cannot be distinguished at the available precision,
    /// typically a division by something that is zero to its precision.
    #[error("precision indeterminate: {0}")]
    PrecisionIndeterminate(String),
    /// Parameters that are well-formed but not supported by the algorithm.
    #[error("usage error: {0}")]
    Usage(String),
    /// An internal assertion about the mathematics failed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn indeterminate(msg: impl Into<String>) -> Error {
    Error::PrecisionIndeterminate(msg.into())
}

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
