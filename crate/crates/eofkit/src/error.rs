//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by state construction, projections, reconstruction and
/// measurement simulation.
#[derive(Debug, Error)]
pub enum EofError {
    /// Shape or index mismatch (wrong amplitude count, out-of-range
    /// generator pair, non-conformable matrices, ...).
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Input contains NaN or infinity.
    #[error("invalid input: {0}")]
    NonFinite(String),

    /// Σ|a_ij|² deviates too far from 1 and renormalization was not
    /// requested.
    #[error("normalization error: {0}")]
    Normalization(String),

    /// The amplitude vector is (numerically) zero.
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// A probability spectrum has a negative entry or a bad sum.
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    /// A supplied local rotation is not unitary.
    #[error("invalid unitary: {0}")]
    InvalidUnitary(String),

    /// A block quantity was requested for a block with (numerically) zero
    /// weight.
    #[error("degenerate block: {0}")]
    DegenerateBlock(String),

    /// An operation that requires Schmidt-diagonal input got something
    /// else.
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    /// A measurement plan with an unusable budget.
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
}

pub type Result<T> = std::result::Result<T, EofError>;
