//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by state construction, analysis, and the explorer.
#[derive(Debug, Error)]
pub enum Error {
    /// A basis, shift, or outcome index fell outside `0..d`.
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Qudit dimension outside the supported range.
    #[error("qudit dimension {d} outside supported range {min}..={max}")]
    UnsupportedDimension { d: usize, min: usize, max: usize },

    /// The operation materializes the full multi-qudit state and the
    /// dimension exceeds the cap for that path.
    #[error("dimension {d} exceeds the full-state cap of {cap}")]
    FullStateCapExceeded { d: usize, cap: usize },

    #[error("invalid state vector: {reason}")]
    InvalidState { reason: String },

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("invalid unitary matrix: {reason}")]
    InvalidUnitary { reason: String },

    #[error("invalid probability vector: {reason}")]
    InvalidProbability { reason: String },

    #[error("invalid lambda table: {reason}")]
    InvalidLambda { reason: String },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    /// An internal consistency assertion failed. Either the implementation
    /// is broken or a bound that should hold for all valid inputs was
    /// violated; both are reportable bugs.
    #[error("theorem-violation check failed: {details}")]
    TheoremViolation { details: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
