//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("cannot factor zero")]
    ZeroPolynomial,

    #[error("polynomial is identically zero")]
    IdenticallyZero,

    #[error("not irreducible")]
    NotIrreducible,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("series too short to certify residual up to {0}")]
    SeriesTooShort(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("internal invariant violation: {0}")]
    Internal(String),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Process exit code for the CLI: 1 for user errors, 2 for internal bugs.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 2,
            _ => 1,
        }
    }
}
