//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. The variants
//! partition failures into the classes a caller can act on differently:
//! bad arguments, mismatched dimensions, malformed input files, degenerate
//! class structure, and numerical breakdown.

use thiserror::Error;

/// Failure classes shared by the whole toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside its documented domain (e.g. a fraction not in
    /// (0, 1), a zero neighbour count, an empty table where rows are needed).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Two shapes that must agree do not (column counts, vector lengths).
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An input file or document does not follow its declared format.
    #[error("schema error: {0}")]
    Schema(String),

    /// The class structure of the data makes the operation meaningless
    /// (single-class training data, a class too small to stratify, ...).
    #[error("class error: {0}")]
    Class(String),

    /// A numerical procedure failed to converge or produced non-finite
    /// values.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
