use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An operation was applied outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A grading datum violates the constraints of its series.
    #[error("invalid grading datum: {0}")]
    InvalidSpec(String),

    /// An enumeration would exceed the configured bound.
    #[error("resource bound exceeded: {what} requires {needed}, bound is {bound}")]
    Resource {
        what: String,
        needed: String,
        bound: u64,
    },

    /// An exact cross-check failed. This signals an implementation bug.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, needed: impl ToString, bound: u64) -> Self {
        Error::Resource {
            what: what.into(),
            needed: needed.to_string(),
            bound,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the size of any group that is enumerated element by element.
pub const DEFAULT_BOUND: u64 = 2_000_000;
