use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a mathematical precondition (out-of-range
    /// probability, mismatched alphabets, invariant-breaking distribution).
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was invoked in a way its contract forbids (blocking on a
    /// resource without blocking enabled, empty strategy list, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// An exact enumeration would exceed the configured cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
