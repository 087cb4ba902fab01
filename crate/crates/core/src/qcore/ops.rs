//! Expectation, variance, and the qubit Bloch-representation maps.

use num_complex::Complex;

use super::eigen::eigen_hermitian;
use super::matrix::ComplexMatrix;
use super::state::{BlochVector, DensityMatrix, Projector};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// Tr(Oρ) for a Hermitian observable. The imaginary residue must stay below
/// 1e-12 and is discarded after the check.
pub fn expectation<T: Scalar>(o: &ComplexMatrix<T>, rho: &DensityMatrix<T>) -> Result<T> {
    o.require_hermitian(T::lit(1e-12))?;
    if o.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: o.dim(),
            right: rho.dim(),
        });
    }
    let tr = o.mul(rho.matrix())?.trace();
    debug_assert!(tr.im.abs() < T::lit(1e-10), "expectation picked up an imaginary part");
    Ok(tr.re)
}

/// Tr(O²ρ) − Tr²(Oρ). Negative residues within −1e-12 are clamped to zero;
/// anything more negative is a logic error upstream and panics in debug.
pub fn variance<T: Scalar>(o: &ComplexMatrix<T>, rho: &DensityMatrix<T>) -> Result<T> {
    let mean = expectation(o, rho)?;
    let second = o.mul(o)?.mul(rho.matrix())?.trace().re;
    let var = second - mean * mean;
    if var < T::zero() {
        debug_assert!(var > T::lit(-1e-12), "variance {:?} below clamp window", var.to_f64());
        return Ok(T::zero());
    }
    Ok(var)
}

/// Rank-1 qubit projector ½(I + a⃗·σ⃗) for a unit Bloch axis.
pub fn qubit_projector<T: Scalar>(axis: BlochVector<T>) -> Result<Projector<T>> {
    if !axis.is_unit() {
        return Err(Error::invalid_parameter(format!(
            "projector axis must be unit length, |a| = {}",
            axis.norm().to_f64().unwrap_or(f64::NAN)
        )));
    }
    let half = T::half();
    let m = ComplexMatrix::new(
        2,
        vec![
            Complex::new(half * (T::one() + axis.r_z), T::zero()),
            Complex::new(half * axis.r_x, -half * axis.r_y),
            Complex::new(half * axis.r_x, half * axis.r_y),
            Complex::new(half * (T::one() - axis.r_z), T::zero()),
        ],
    )?;
    Projector::new(m)
}

/// ρ = ½(I + r⃗·σ⃗) for |r| ≤ 1.
pub fn bloch_to_density<T: Scalar>(r: BlochVector<T>) -> Result<DensityMatrix<T>> {
    if !r.is_state() {
        return Err(Error::BlochNormTooLarge {
            norm: r.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let half = T::half();
    let m = ComplexMatrix::new(
        2,
        vec![
            Complex::new(half * (T::one() + r.r_z), T::zero()),
            Complex::new(half * r.r_x, -half * r.r_y),
            Complex::new(half * r.r_x, half * r.r_y),
            Complex::new(half * (T::one() - r.r_z), T::zero()),
        ],
    )?;
    DensityMatrix::new(m)
}

/// Inverse of [`bloch_to_density`]: r_i = Tr(ρ σ_i).
pub fn density_to_bloch<T: Scalar>(rho: &DensityMatrix<T>) -> Result<BlochVector<T>> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 2,
        });
    }
    let m = rho.matrix();
    let r_x = (m.get(0, 1) + m.get(1, 0)).re;
    let r_y = (m.get(0, 1) - m.get(1, 0)).im.neg();
    let r_z = (m.get(0, 0) - m.get(1, 1)).re;
    Ok(BlochVector::new(r_x, r_y, r_z))
}

/// Decomposes a non-degenerate 2×2 Hermitian observable as
/// O = scale·P + shift·I with P the projector onto the top eigenvector,
/// shift = μ₁ and scale = μ₂ − μ₁, so ΔO = scale²·ΔP for every state.
pub fn shift_scale_to_projector<T: Scalar>(
    o: &ComplexMatrix<T>,
) -> Result<(Projector<T>, T, T)> {
    if o.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: o.dim(),
            right: 2,
        });
    }
    let eig = eigen_hermitian(o, T::lit(1e-12))?;
    let (mu1, mu2) = (eig.values[0], eig.values[1]);
    let gap = mu2 - mu1;
    if gap <= T::lit(1e-10) {
        return Err(Error::DegenerateSpectrum {
            gap: gap.to_f64().unwrap_or(f64::NAN),
        });
    }
    let top = eig.vector(1);
    let p = Projector::new(ComplexMatrix::outer(&top))?;
    Ok((p, mu1, gap))
}
