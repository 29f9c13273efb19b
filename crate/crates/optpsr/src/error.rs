//! Crate-wide error type.
//!
//! Variants are grouped by how a caller should react: `Validation` and
//! `Parse` mean the input is wrong, `CapExceeded` and `Sampling` mean a
//! resource limit was hit and the run was refused, `Degenerate` means an
//! experiment produced nothing to measure, and `Internal` flags a broken
//! invariant inside the library itself.

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Structurally invalid input: bad dimensions, malformed votes,
    /// negative weights, and similar.
    #[error("validation: {0}")]
    Validation(String),

    /// A text input failed to parse.  Positions are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        /// 1-based line of the offending token.
        line: usize,
        /// 1-based column of the offending token.
        column: usize,
        /// What was expected or what went wrong.
        message: String,
    },

    /// A configured resource cap would be exceeded; the run was refused
    /// rather than started.
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    /// A rejection sampler ran out of attempts.
    #[error("sampling failed: {0}")]
    Sampling(String),

    /// An experiment configuration produced nothing measurable
    /// (for example, no usable pairwise constraints).
    #[error("degenerate experiment: {0}")]
    Degenerate(String),

    /// An internal invariant was violated.  This is a bug in the library,
    /// not in the caller's input.
    #[error("internal consistency violation: {0}")]
    Internal(String),

    /// An underlying I/O operation failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
