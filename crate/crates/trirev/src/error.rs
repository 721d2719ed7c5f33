//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The operation needs structure the space does not carry
    /// (inner product outside p = 2, semi-inner product at p ∈ {1, ∞}, ...).
    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    /// A theorem precondition does not hold for the supplied data.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// An instance or equality-case constructor could not produce a valid witness.
    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    /// Quadrature or an iterative method did not stabilise within budget.
    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    /// Ratio-form bounds reject numerically vanishing denominators.
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
