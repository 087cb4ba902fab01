//! Variance-based uncertainty regions for pairs of quantum observables.
//!
//! The crate computes the set of variance pairs (ΔA, ΔB) attainable over all
//! quantum states, tests membership in the analytic qubit/qudit regions,
//! cross-validates them with seeded Monte-Carlo sampling, and simulates a
//! photonic counting experiment that regenerates the same scatter data.
//!
//! Core numerics are generic over the real scalar type via [`Scalar`];
//! concrete `f64` aliases live at the crate root.

pub mod error;
pub mod io;
pub mod jordan;
pub mod photonics;
pub mod qcore;
pub mod regions;
pub mod sampling;
pub mod scalar;
pub mod verify;
pub mod wavepacket;

pub use error::Error;
pub use scalar::Scalar;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

// Concrete f64 aliases for the generic core types.
pub type ComplexMatrix64 = qcore::ComplexMatrix<f64>;
pub type PureState64 = qcore::PureState<f64>;
pub type DensityMatrix64 = qcore::DensityMatrix<f64>;
pub type Projector64 = qcore::Projector<f64>;
pub type BlochVector64 = qcore::BlochVector<f64>;
pub type JordanDecomposition64 = jordan::JordanDecomposition<f64>;
pub type VariancePoint64 = regions::VariancePoint<f64>;
pub type GaussianPacket64 = wavepacket::GaussianPacket<f64>;
