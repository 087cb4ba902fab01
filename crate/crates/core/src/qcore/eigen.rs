//! Cyclic Jacobi eigensolver for complex Hermitian matrices at d ≤ 16.

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// Eigendecomposition H = V diag(λ) V† with λ ascending and V unitary.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T: Scalar> {
    pub values: Vec<T>,
    /// Columns are orthonormal eigenvectors, in the order of `values`.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Scalar> EigenDecomposition<T> {
    /// Eigenvector for `values[k]` as a column.
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.vectors.dim()).map(|i| self.vectors.get(i, k)).collect()
    }
}

/// Frobenius mass of the strict off-diagonal part.
fn off_diagonal_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let d = a.dim();
    let mut sum = T::zero();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                sum = sum + a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations on the complex
/// Hermitian form, sweeping until the off-diagonal Frobenius mass falls below
/// `1e-14` (scaled by the matrix magnitude for large entries).
pub fn eigen_hermitian<T: Scalar>(h: &ComplexMatrix<T>, tol: T) -> Result<EigenDecomposition<T>> {
    h.require_hermitian(tol)?;
    let d = h.dim();
    // Symmetrize so roundoff in the input cannot bias the iteration.
    let mut a = ComplexMatrix::from_fn(d, |i, j| (h.get(i, j) + h.get(j, i).conj()).scale(T::half()));
    let mut v = ComplexMatrix::identity(d);

    let scale = a.max_abs().max(T::one());
    let target = T::lit(1e-14) * scale;
    let max_sweeps = 100;

    for _sweep in 0..max_sweeps {
        if off_diagonal_norm(&a) < target {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let g = apq.norm();
                if g <= T::lit(1e-300) {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (g * T::two());
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // Phase factor u with a[p][q] = g·u.
                let u = apq.unscale(g);
                let su = u.scale(s);
                let su_conj = u.conj().scale(s);

                // A ← J† A J with J acting on the (p, q) plane:
                // J[p][p]=c, J[p][q]=s·u, J[q][p]=−s·conj(u), J[q][q]=c.
                for k in 0..d {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp.scale(c) - akq * su_conj);
                    a.set(k, q, akp * su + akq.scale(c));
                }
                for k in 0..d {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk.scale(c) - su * aqk);
                    a.set(q, k, su_conj * apk + aqk.scale(c));
                }
                // Pivot entries are known analytically; pin them to kill drift.
                a.set(p, q, Complex::new(T::zero(), T::zero()));
                a.set(q, p, Complex::new(T::zero(), T::zero()));
                a.set(p, p, Complex::new(a.get(p, p).re, T::zero()));
                a.set(q, q, Complex::new(a.get(q, q).re, T::zero()));

                for k in 0..d {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp.scale(c) - vkq * su_conj);
                    v.set(k, q, vkp * su + vkq.scale(c));
                }
            }
        }
    }

    let off = off_diagonal_norm(&a);
    if off >= target * T::lit(10.0) {
        return Err(Error::EigenNoConvergence {
            sweeps: max_sweeps,
            off: off.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<T> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(d, |i, j| v.get(i, order[j]));
    Ok(EigenDecomposition { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn reconstruct(e: &EigenDecomposition<f64>) -> ComplexMatrix<f64> {
        let d = e.vectors.dim();
        let lambda = ComplexMatrix::from_fn(d, |i, j| {
            if i == j {
                c(e.values[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        e.vectors
            .mul(&lambda)
            .unwrap()
            .mul(&e.vectors.adjoint())
            .unwrap()
    }

    #[test]
    fn pauli_y_spectrum() {
        let sy = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        let e = eigen_hermitian(&sy, 1e-12).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(reconstruct(&e).max_abs_diff(&sy).unwrap() < 1e-13);
        assert!(e.vectors.unitarity_deviation() < 1e-13);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        // Deterministic pseudo-random Hermitian matrices via a simple LCG.
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        for d in 2..=8 {
            let mut m = ComplexMatrix::zeros(d);
            for i in 0..d {
                for j in i..d {
                    if i == j {
                        m.set(i, i, c(next(), 0.0));
                    } else {
                        let z = c(next(), next());
                        m.set(i, j, z);
                        m.set(j, i, z.conj());
                    }
                }
            }
            let e = eigen_hermitian(&m, 1e-12).unwrap();
            assert!(reconstruct(&e).max_abs_diff(&m).unwrap() < 1e-12, "d={}", d);
            assert!(e.vectors.unitarity_deviation() < 1e-12);
            for w in e.values.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(eigen_hermitian(&m, 1e-12).is_err());
    }

    #[test]
    fn degenerate_eigenvectors_stay_orthonormal() {
        let id = ComplexMatrix::<f64>::identity(4);
        let e = eigen_hermitian(&id, 1e-12).unwrap();
        assert!(e.vectors.unitarity_deviation() < 1e-14);
        for v in &e.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }
}
