use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An input violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Working precision ran out before a result could be certified.
    #[error("precision exhausted: {0}")]
    Precision(String),
    /// A series would need more terms than the configured maximum.
    #[error("series truncation: need {needed} terms, limit is {limit}")]
    Truncation { needed: usize, limit: usize },
    /// Neither a confirmation nor a refutation could be certified.
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    /// A search ran out of its configured budget.
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// A certificate or serialized document failed to parse or validate.
    #[error("invalid certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
