//! Quantum state and observable types with validated invariants.

use num_complex::Complex;

use super::eigen::eigen_hermitian;
use super::matrix::ComplexMatrix;
use super::DEFAULT_TOL;
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// A normalized pure state |ψ⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Scalar> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    /// Builds a pure state, requiring Σ|amplitude|² = 1 within 1e-12.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid_state("state must have positive dimension"));
        }
        let norm_sq = amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if (norm_sq - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::invalid_state(format!(
                "state norm² = {} is not 1",
                norm_sq.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector into a pure state.
    pub fn normalized(mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if norm <= T::zero() {
            return Err(Error::invalid_state("cannot normalize the zero vector"));
        }
        for z in &mut amplitudes {
            *z = z.unscale(norm);
        }
        Self::new(amplitudes)
    }

    /// Computational basis state |k⟩ in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); dim];
        amplitudes[k] = Complex::new(T::one(), T::zero());
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    /// |⟨self|other⟩|².
    pub fn overlap(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let ip = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            });
        Ok(ip.norm_sqr())
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
        }
    }

    /// Rank-1 projector |ψ⟩⟨ψ|.
    pub fn projector(&self) -> Projector<T> {
        Projector {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            rank: 1,
        }
    }
}

/// A density matrix: Hermitian, trace one, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Scalar> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        matrix.require_hermitian(T::lit(1e-12))?;
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::invalid_state(format!(
                "trace = {} is not 1",
                tr.re.to_f64().unwrap_or(f64::NAN)
            )));
        }
        let eig = eigen_hermitian(&matrix, T::lit(1e-12))?;
        if let Some(min) = eig.values.first() {
            if *min < T::lit(-1e-10) {
                return Err(Error::invalid_state(format!(
                    "negative eigenvalue {}",
                    min.to_f64().unwrap_or(f64::NAN)
                )));
            }
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(T::one() / T::lit(dim as f64)),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn purity(&self) -> T {
        self.matrix
            .mul(&self.matrix)
            .expect("same dim")
            .trace()
            .re
    }
}

/// A Hermitian idempotent operator with known rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector<T: Scalar> {
    matrix: ComplexMatrix<T>,
    rank: usize,
}

impl<T: Scalar> Projector<T> {
    /// Validates Hermiticity, idempotency (‖P²−P‖_max ≤ 1e-10) and that the
    /// trace is an integer rank within 1e-10.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        matrix.require_hermitian(T::lit(1e-12))?;
        let p2 = matrix.mul(&matrix)?;
        let idem = p2.max_abs_diff(&matrix)?;
        if idem > T::lit(DEFAULT_TOL) {
            return Err(Error::NotAProjector {
                reason: format!(
                    "not idempotent: max |P²−P| = {:e}",
                    idem.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        let tr = matrix.trace().re;
        let rank_f = tr.round();
        if (tr - rank_f).abs() > T::lit(DEFAULT_TOL) || rank_f < T::zero() {
            return Err(Error::NotAProjector {
                reason: format!(
                    "trace {} is not a nonnegative integer",
                    tr.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        let rank = rank_f.to_f64().unwrap() as usize;
        Ok(Self { matrix, rank })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }
}

/// Real Bloch 3-vector parameterizing qubit states and observable axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<T: Scalar> {
    pub r_x: T,
    pub r_y: T,
    pub r_z: T,
}

impl<T: Scalar> BlochVector<T> {
    pub fn new(r_x: T, r_y: T, r_z: T) -> Self {
        Self { r_x, r_y, r_z }
    }

    pub fn norm(&self) -> T {
        (self.r_x * self.r_x + self.r_y * self.r_y + self.r_z * self.r_z).sqrt()
    }

    /// Checks |r| ≤ 1 + 1e-12, the state condition.
    pub fn is_state(&self) -> bool {
        self.norm() <= T::one() + T::lit(1e-12)
    }

    /// Checks |r| = 1 within 1e-12, the pure-state / unit-axis condition.
    pub fn is_unit(&self) -> bool {
        (self.norm() - T::one()).abs() <= T::lit(1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pure_state_norm_is_enforced() {
        assert!(PureState::new(vec![c(1.0, 0.0), c(0.1, 0.0)]).is_err());
        assert!(PureState::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_ok());
        let s = PureState::normalized(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!((s.amplitudes()[0].re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_invariants() {
        let mixed = DensityMatrix::<f64>::maximally_mixed(2);
        assert!((mixed.purity() - 0.5).abs() < 1e-15);
        // Trace-one but not PSD.
        let bad = ComplexMatrix::from_real(2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(DensityMatrix::new(bad).is_err());
        // Hermitian violation.
        let skew =
            ComplexMatrix::new(2, vec![c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0)])
                .unwrap();
        assert!(DensityMatrix::new(skew).is_err());
    }

    #[test]
    fn projector_validation() {
        let p = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let p = Projector::new(p).unwrap();
        assert_eq!(p.rank(), 1);
        let not_idem = ComplexMatrix::from_real(2, &[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(Projector::new(not_idem).is_err());
    }

    #[test]
    fn pure_state_density_roundtrip() {
        let s = PureState::normalized(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let rho = s.to_density();
        assert!((rho.purity() - 1.0).abs() < 1e-14);
        assert_eq!(rho.dim(), 2);
    }

    #[test]
    fn bloch_vector_checks() {
        assert!(BlochVector::new(0.0, 0.0, 1.0).is_unit());
        assert!(BlochVector::new(0.3, 0.0, 0.4).is_state());
        assert!(!BlochVector::new(1.5, 0.0, 0.0).is_state());
    }
}
