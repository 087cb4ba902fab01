//! Complex matrix arithmetic at small dimension, quantum state and observable
//! types, and the variance functional everything else consumes.

mod eigen;
mod matrix;
mod ops;
mod state;

pub use eigen::{eigen_hermitian, EigenDecomposition};
pub use matrix::ComplexMatrix;
pub use ops::{
    bloch_to_density, density_to_bloch, expectation, qubit_projector, shift_scale_to_projector,
    variance,
};
pub use state::{BlochVector, DensityMatrix, Projector, PureState};

/// Default tolerance for Hermiticity / idempotency checks (max-abs-entry norm).
pub const DEFAULT_TOL: f64 = 1e-10;
