use thiserror::Error;

use crate::fincat::FinCatError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    FinCat(#[from] FinCatError),

    #[error("size budget exceeded while {what}: limit {limit}")]
    SizeBudgetExceeded { what: String, limit: u64 },

    #[error("functor target mismatch: {0}")]
    TargetMismatch(String),

    #[error("antisymmetry violated: {0} <= {1} and {1} <= {0}")]
    Antisymmetry(String, String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("graph has a non-identity cycle through node {0}; its free category is infinite")]
    CyclicGraphUnsupported(String),

    #[error("pushout 3 is not available: {0}")]
    PushoutUnavailable(&'static str),

    #[error("capability `{capability}` is not provided by instance {instance}")]
    Unsupported { instance: &'static str, capability: &'static str },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("{path}: {inner}")]
    InFile { path: String, inner: Box<Error> },

    /// A factoring that should be unique was found zero or several times.
    #[error("universality failure: {what} has {found} solutions, expected exactly one")]
    NotUnique { what: String, found: usize },
}
