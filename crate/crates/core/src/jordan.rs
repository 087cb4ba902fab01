//! Simultaneous block-diagonalization of two projectors, yielding the
//! principal angles that parameterize the analytic uncertainty regions.
//!
//! The construction eigendecomposes PQP restricted to range(P): an eigenvalue
//! c strictly inside (0, 1) gives a 2×2 block with θ = arccos(√c); c ≈ 1 gives
//! a shared one-dimensional block; c ≈ 0 pairs with a leftover Q-direction
//! into a θ = π/2 block when one exists.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qcore::{eigen_hermitian, ComplexMatrix, Projector};
use crate::scalar::Scalar;
use crate::Result;

/// Classification tolerance for PQP eigenvalues at the 0/1 endpoints.
pub const CLASSIFY_TOL: f64 = 1e-10;

/// One block of the simultaneous decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum JordanBlock<T: Scalar> {
    /// 1×1 block with P and Q each acting as 0 or 1.
    OneDim { p: bool, q: bool },
    /// 2×2 block at principal angle θ ∈ (0, π/2].
    TwoDim { theta: T },
}

impl<T: Scalar> JordanBlock<T> {
    pub fn size(&self) -> usize {
        match self {
            JordanBlock::OneDim { .. } => 1,
            JordanBlock::TwoDim { .. } => 2,
        }
    }
}

/// Basis plus ordered block list such that U†PU and U†QU are block diagonal
/// in canonical form.
#[derive(Debug, Clone)]
pub struct JordanDecomposition<T: Scalar> {
    pub basis: ComplexMatrix<T>,
    pub blocks: Vec<JordanBlock<T>>,
}

type CVec<T> = Vec<Complex<T>>;

fn inner<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x.conj() * *y
        })
}

fn norm<T: Scalar>(v: &[Complex<T>]) -> T {
    v.iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Modified Gram–Schmidt with one re-orthogonalization pass. Returns `None`
/// when the vector lies (numerically) in the span of `basis`.
fn orthonormalize_against<T: Scalar>(mut v: CVec<T>, basis: &[CVec<T>]) -> Option<CVec<T>> {
    for _ in 0..2 {
        for b in basis {
            let c = inner(b, &v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = *vi - c * *bi;
            }
        }
    }
    let n = norm(&v);
    if n < T::lit(1e-8) {
        return None;
    }
    for z in &mut v {
        *z = z.unscale(n);
    }
    Some(v)
}

/// Orthonormal basis of the eigenvalue-one eigenspace of a projector.
fn range_basis<T: Scalar>(p: &Projector<T>) -> Result<Vec<CVec<T>>> {
    let eig = eigen_hermitian(p.matrix(), T::lit(1e-10))?;
    let mut cols = Vec::new();
    for (k, &val) in eig.values.iter().enumerate() {
        if val > T::half() {
            cols.push(eig.vector(k));
        }
    }
    if cols.len() != p.rank() {
        return Err(Error::NotAProjector {
            reason: format!(
                "spectral rank {} disagrees with trace rank {}",
                cols.len(),
                p.rank()
            ),
        });
    }
    Ok(cols)
}

/// Computes the simultaneous block decomposition of two projectors.
///
/// Blocks are canonically ordered: 2×2 blocks ascending by θ, then 1×1 blocks
/// lexicographic by (p, q).
pub fn jordan_decompose<T: Scalar>(
    p: &Projector<T>,
    q: &Projector<T>,
) -> Result<JordanDecomposition<T>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let d = p.dim();
    let tol = T::lit(CLASSIFY_TOL);

    let p_range = range_basis(p)?;
    let q_range = range_basis(q)?;
    let r = p_range.len();

    // M = V† Q V on range(P); its spectrum is {cos²θ}.
    let m = ComplexMatrix::from_fn(r, |i, j| {
        let qv = q.matrix().apply(&p_range[j]).expect("dims match");
        inner(&p_range[i], &qv)
    });
    let eig = eigen_hermitian(&m, T::lit(1e-9))?;

    struct TwoDimRaw<T: Scalar> {
        theta: T,
        u: Vec<Complex<T>>,
        partner: Vec<Complex<T>>,
    }

    let mut two_dim: Vec<TwoDimRaw<T>> = Vec::new();
    let mut shared_ones: Vec<CVec<T>> = Vec::new(); // range(P) ∩ range(Q)
    let mut p_only: Vec<CVec<T>> = Vec::new(); // range(P) ∩ ker(Q)

    let lift = |w: &[Complex<T>]| -> CVec<T> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); d];
        for (k, col) in p_range.iter().enumerate() {
            for i in 0..d {
                out[i] = out[i] + col[i] * w[k];
            }
        }
        out
    };

    for k in 0..r {
        let c = eig.values[k].max(T::zero()).min(T::one());
        let u = lift(&eig.vector(k));
        if c >= T::one() - tol {
            shared_ones.push(u);
        } else if c <= tol {
            p_only.push(u);
        } else {
            let theta = c.sqrt().acos();
            // Partner direction (Qu − c·u)/√(c(1−c)) spans the Q-side of the block.
            let qu = q.matrix().apply(&u)?;
            let partner: CVec<T> = qu
                .iter()
                .zip(&u)
                .map(|(&a, &b)| a - b.scale(c))
                .collect();
            two_dim.push(TwoDimRaw { theta, u, partner });
        }
    }

    // Q-directions with no P-component: eigenvectors of W†PW near zero.
    let rq = q_range.len();
    let mp = ComplexMatrix::from_fn(rq, |i, j| {
        let pv = p.matrix().apply(&q_range[j]).expect("dims match");
        inner(&q_range[i], &pv)
    });
    let eig_q = eigen_hermitian(&mp, T::lit(1e-9))?;
    let mut q_only: Vec<CVec<T>> = Vec::new();
    for k in 0..rq {
        if eig_q.values[k] <= tol {
            let mut out = vec![Complex::new(T::zero(), T::zero()); d];
            let w = eig_q.vector(k);
            for (idx, col) in q_range.iter().enumerate() {
                for i in 0..d {
                    out[i] = out[i] + col[i] * w[idx];
                }
            }
            q_only.push(out);
        }
    }

    // Pair range(P)∩ker(Q) with range(Q)∩ker(P) into θ = π/2 blocks;
    // leftovers stay one-dimensional.
    let pairs = p_only.len().min(q_only.len());
    let right_angle = T::half() * T::pi();
    for i in 0..pairs {
        two_dim.push(TwoDimRaw {
            theta: right_angle,
            u: p_only[i].clone(),
            partner: q_only[i].clone(),
        });
    }
    let p_leftover: Vec<CVec<T>> = p_only.drain(pairs..).collect();
    let q_leftover: Vec<CVec<T>> = q_only.drain(pairs..).collect();

    two_dim.sort_by(|a, b| a.theta.partial_cmp(&b.theta).expect("finite angles"));

    // Assemble basis columns in canonical block order, re-orthonormalizing as
    // we go so clustered angles cannot degrade unitarity.
    let mut columns: Vec<CVec<T>> = Vec::with_capacity(d);
    let mut blocks: Vec<JordanBlock<T>> = Vec::new();

    for raw in &two_dim {
        let u = orthonormalize_against(raw.u.clone(), &columns).ok_or_else(|| {
            Error::invalid_state("block basis vector collapsed during orthonormalization")
        })?;
        columns.push(u);
        let partner = orthonormalize_against(raw.partner.clone(), &columns).ok_or_else(|| {
            Error::invalid_state("partner basis vector collapsed during orthonormalization")
        })?;
        columns.push(partner);
        blocks.push(JordanBlock::TwoDim { theta: raw.theta });
    }

    // OneDim blocks in lexicographic (p, q) order: (0,0), (0,1), (1,0), (1,1).
    let n_zero = d
        - columns.len()
        - q_leftover.len()
        - p_leftover.len()
        - shared_ones.len();
    let mut kernel: Vec<CVec<T>> = Vec::new();
    {
        // Complement of everything assigned so far and of the leftover lists.
        let mut occupied = columns.clone();
        occupied.extend(q_leftover.iter().cloned());
        occupied.extend(p_leftover.iter().cloned());
        occupied.extend(shared_ones.iter().cloned());
        for i in 0..d {
            if kernel.len() == n_zero {
                break;
            }
            let mut e = vec![Complex::new(T::zero(), T::zero()); d];
            e[i] = Complex::new(T::one(), T::zero());
            let mut all: Vec<CVec<T>> = occupied.clone();
            all.extend(kernel.iter().cloned());
            if let Some(v) = orthonormalize_against(e, &all) {
                kernel.push(v);
            }
        }
        if kernel.len() != n_zero {
            return Err(Error::invalid_state(
                "failed to complete the joint-kernel basis",
            ));
        }
    }

    for v in kernel {
        columns.push(v);
        blocks.push(JordanBlock::OneDim { p: false, q: false });
    }
    for v in q_leftover {
        let v = orthonormalize_against(v, &columns)
            .ok_or_else(|| Error::invalid_state("q-only basis vector collapsed"))?;
        columns.push(v);
        blocks.push(JordanBlock::OneDim { p: false, q: true });
    }
    for v in p_leftover {
        let v = orthonormalize_against(v, &columns)
            .ok_or_else(|| Error::invalid_state("p-only basis vector collapsed"))?;
        columns.push(v);
        blocks.push(JordanBlock::OneDim { p: true, q: false });
    }
    for v in shared_ones {
        let v = orthonormalize_against(v, &columns)
            .ok_or_else(|| Error::invalid_state("shared basis vector collapsed"))?;
        columns.push(v);
        blocks.push(JordanBlock::OneDim { p: true, q: true });
    }

    debug_assert_eq!(columns.len(), d);

    // Columns were appended in block order, but OneDim blocks must come after
    // TwoDim ones in (p,q)-lexicographic order; they already do by
    // construction: (0,0), (0,1), (1,0), (1,1).
    let basis = ComplexMatrix::from_fn(d, |i, j| columns[j][i]);
    Ok(JordanDecomposition { basis, blocks })
}

/// Only the 2×2-block angles, ascending.
pub fn principal_angles<T: Scalar>(p: &Projector<T>, q: &Projector<T>) -> Result<Vec<T>> {
    let dec = jordan_decompose(p, q)?;
    Ok(dec
        .blocks
        .iter()
        .filter_map(|b| match b {
            JordanBlock::TwoDim { theta } => Some(*theta),
            _ => None,
        })
        .collect())
}

/// Canonical block matrices for (P, Q) restricted to one block.
fn canonical_block<T: Scalar>(block: &JordanBlock<T>) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    match block {
        JordanBlock::OneDim { p, q } => {
            let pv = if *p { T::one() } else { T::zero() };
            let qv = if *q { T::one() } else { T::zero() };
            (vec![vec![pv]], vec![vec![qv]])
        }
        JordanBlock::TwoDim { theta } => {
            let (c, s) = (theta.cos(), theta.sin());
            (
                vec![vec![T::one(), T::zero()], vec![T::zero(), T::zero()]],
                vec![vec![c * c, c * s], vec![c * s, s * s]],
            )
        }
    }
}

/// Reassembles (P, Q) from a decomposition by conjugating the canonical block
/// forms back through the basis.
pub fn reconstruct<T: Scalar>(
    dec: &JordanDecomposition<T>,
) -> (ComplexMatrix<T>, ComplexMatrix<T>) {
    let d = dec.basis.dim();
    let mut p_blk = ComplexMatrix::zeros(d);
    let mut q_blk = ComplexMatrix::zeros(d);
    let mut offset = 0;
    for block in &dec.blocks {
        let (pb, qb) = canonical_block(block);
        let n = block.size();
        for i in 0..n {
            for j in 0..n {
                p_blk.set(offset + i, offset + j, Complex::new(pb[i][j], T::zero()));
                q_blk.set(offset + i, offset + j, Complex::new(qb[i][j], T::zero()));
            }
        }
        offset += n;
    }
    let u = &dec.basis;
    let ud = u.adjoint();
    let p = u.mul(&p_blk).expect("dims").mul(&ud).expect("dims");
    let q = u.mul(&q_blk).expect("dims").mul(&ud).expect("dims");
    (p, q)
}

impl<T: Scalar> JordanDecomposition<T> {
    /// Sum of block sizes, which must equal the basis dimension.
    pub fn total_size(&self) -> usize {
        self.blocks.iter().map(JordanBlock::size).sum()
    }
}
