use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The edge-list text could not be turned into a graph.
    #[error("ingestion error: {0}")]
    Ingestion(String),
    /// A caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// A matching or driver set failed structural validation.
    #[error("validation error: {0}")]
    Validation(String),
    /// A statistic was requested on input where it is not defined.
    #[error("undefined statistic: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
