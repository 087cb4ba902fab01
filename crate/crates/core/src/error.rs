//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e} > tol {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("operator is not a projector: {reason}")]
    NotAProjector { reason: String },

    #[error("invalid state: {reason}")]
    InvalidState { reason: String },

    #[error("invalid Bloch vector: |r| = {norm} exceeds 1")]
    BlochNormTooLarge { norm: f64 },

    #[error("spectrum is degenerate (gap {gap:e}); observable is proportional to the identity")]
    DegenerateSpectrum { gap: f64 },

    #[error("angle {theta} outside supported range {range}")]
    ThetaOutOfRange { theta: f64, range: &'static str },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("analytic region unavailable: {reason}")]
    OutOfAnalyticScope { reason: String },

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal {off:e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },

    #[error("no detection events in the post-selected ports")]
    EmptyPostSelection,

    #[error("port probabilities sum to {sum}, not 1")]
    ProbabilityNormalization { sum: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid_state(reason: impl Into<String>) -> Self {
        Error::InvalidState {
            reason: reason.into(),
        }
    }

    pub fn invalid_parameter(reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            reason: reason.into(),
        }
    }
}
