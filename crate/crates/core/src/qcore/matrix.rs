//! Dense complex matrices, row-major, sized for d ≤ 16.

use num_complex::Complex;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// A dim×dim complex matrix stored row-major as an immutable value.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Scalar> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid_parameter("matrix dimension must be positive"));
        }
        if entries.len() != dim * dim {
            return Err(Error::invalid_parameter(format!(
                "expected {} entries for dim {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, rows: &[T]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|&x| Complex::new(x, T::zero()))
            .collect::<Vec<_>>();
        Self::new(dim, entries)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Outer product |v⟩⟨v| of a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex<T>]) -> Self {
        let dim = v.len();
        Self::from_fn(dim, |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: Complex<T>) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(Self::from_fn(self.dim, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(Self::from_fn(self.dim, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j) * factor)
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            t = t + self.get(i, i);
        }
        t
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for i in 0..self.dim {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..self.dim {
                acc = acc + self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Max-abs-entry norm.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    /// Max-abs-entry distance to another matrix of the same dimension.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<T> {
        Ok(self.sub(rhs)?.max_abs())
    }

    /// Max |M[i][j] − conj(M[j][i])| over all entries.
    pub fn hermiticity_deviation(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Errors unless the matrix is Hermitian within `tol`.
    pub fn require_hermitian(&self, tol: T) -> Result<()> {
        let dev = self.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// ‖U†U − I‖_max, zero for a unitary matrix.
    pub fn unitarity_deviation(&self) -> T {
        let gram = self.adjoint().mul(self).expect("same dim");
        gram.max_abs_diff(&Self::identity(self.dim)).expect("same dim")
    }
}
