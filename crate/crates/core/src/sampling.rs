//! Seeded random-state generation and the brute-force occupancy oracle the
//! analytic regions are validated against, plus the four-projector
//! tetrahedron counterexample showing pure and mixed variance sets can differ.

use num_complex::Complex;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::Error;
use crate::qcore::{variance, ComplexMatrix, DensityMatrix, Projector, PureState};
use crate::regions::VariancePoint;
use crate::Result;

/// Default oracle grid resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 400;

/// Reproducible RNG addressed by (seed, stream): identical pairs give
/// bit-identical sequences regardless of platform or thread schedule.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha12Rng,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { seed, stream, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Derives a child generator whose stream depends only on (stream, k),
    /// never on how much of this generator has been consumed.
    pub fn child(&self, k: u64) -> Self {
        Self::new(self.seed, splitmix64(self.stream ^ splitmix64(k)))
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// Boolean occupancy grid over the variance box [0, 1/4]²; cell (i, j) covers
/// [i/(4·res), (i+1)/(4·res)) × the same in j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyGrid {
    resolution: usize,
    cells: Vec<bool>,
}

impl OccupancyGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::invalid_parameter("resolution must be positive"));
        }
        Ok(Self {
            resolution,
            cells: vec![false; resolution * resolution],
        })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    fn index_of(&self, v: f64) -> usize {
        let scaled = (v * 4.0 * self.resolution as f64).floor();
        (scaled.max(0.0) as usize).min(self.resolution - 1)
    }

    pub fn mark_point(&mut self, d_a: f64, d_b: f64) {
        let i = self.index_of(d_a);
        let j = self.index_of(d_b);
        self.cells[i * self.resolution + j] = true;
    }

    pub fn mark_cell(&mut self, i: usize, j: usize) {
        self.cells[i * self.resolution + j] = true;
    }

    pub fn is_marked(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.resolution + j]
    }

    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        let step = 0.25 / self.resolution as f64;
        ((i as f64 + 0.5) * step, (j as f64 + 0.5) * step)
    }

    /// Boolean OR merge; associative and commutative, so parallel reduction
    /// order cannot change the result.
    pub fn merge(&mut self, other: &OccupancyGrid) -> Result<()> {
        if self.resolution != other.resolution {
            return Err(Error::DimensionMismatch {
                left: self.resolution,
                right: other.resolution,
            });
        }
        for (c, o) in self.cells.iter_mut().zip(&other.cells) {
            *c = *c || *o;
        }
        Ok(())
    }

    pub fn occupancy_fraction(&self) -> f64 {
        let hits = self.cells.iter().filter(|c| **c).count();
        hits as f64 / self.cells.len() as f64
    }

    pub fn differing_fraction(&self, other: &OccupancyGrid) -> Result<f64> {
        if self.resolution != other.resolution {
            return Err(Error::DimensionMismatch {
                left: self.resolution,
                right: other.resolution,
            });
        }
        let diff = self
            .cells
            .iter()
            .zip(&other.cells)
            .filter(|(a, b)| a != b)
            .count();
        Ok(diff as f64 / self.cells.len() as f64)
    }

    /// Erodes by one cell: a cell survives only if its full 8-neighborhood is
    /// marked; out-of-range neighbors count as marked so box edges survive.
    pub fn eroded(&self) -> OccupancyGrid {
        let r = self.resolution as isize;
        let mut out = OccupancyGrid {
            resolution: self.resolution,
            cells: vec![false; self.cells.len()],
        };
        for i in 0..r {
            for j in 0..r {
                let mut keep = self.cells[(i * r + j) as usize];
                'scan: for di in -1..=1 {
                    for dj in -1..=1 {
                        let (ni, nj) = (i + di, j + dj);
                        if ni < 0 || nj < 0 || ni >= r || nj >= r {
                            continue;
                        }
                        if !self.cells[(ni * r + nj) as usize] {
                            keep = false;
                            break 'scan;
                        }
                    }
                }
                out.cells[(i * r + j) as usize] = keep;
            }
        }
        out
    }

    /// Indices of all marked cells, row-major.
    pub fn marked_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let r = self.resolution;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| **c)
            .map(move |(k, _)| (k / r, k % r))
    }
}

fn complex_gaussian(rng: &mut SeededRng) -> Complex<f64> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

/// Haar-uniform pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
pub fn haar_pure(d: usize, rng: &mut SeededRng) -> Result<PureState<f64>> {
    if d < 2 {
        return Err(Error::invalid_parameter("dimension must be at least 2"));
    }
    let amplitudes: Vec<Complex<f64>> = (0..d).map(|_| complex_gaussian(rng)).collect();
    PureState::normalized(amplitudes)
}

/// Hilbert-Schmidt random density matrix ρ = GG†/Tr(GG†), G square Ginibre.
pub fn random_mixed(d: usize, rng: &mut SeededRng) -> Result<DensityMatrix<f64>> {
    if d < 2 {
        return Err(Error::invalid_parameter("dimension must be at least 2"));
    }
    let g = ComplexMatrix::from_fn(d, |_, _| complex_gaussian(rng));
    let gg = g.mul(&g.adjoint())?;
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale_real(1.0 / tr))
}

/// Real-amplitude equatorial qubit states cos φ|0⟩ + sin φ|1⟩, φ uniform,
/// embedded in dimension `dim` with every higher mode unoccupied.
pub fn boundary_states_qubit(
    n: usize,
    dim: usize,
    rng: &mut SeededRng,
) -> Result<Vec<PureState<f64>>> {
    if n == 0 {
        return Err(Error::invalid_parameter("need at least one state"));
    }
    if dim < 2 {
        return Err(Error::invalid_parameter("dimension must be at least 2"));
    }
    (0..n)
        .map(|_| {
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let mut amps = vec![Complex::new(0.0, 0.0); dim];
            amps[0] = Complex::new(phi.cos(), 0.0);
            amps[1] = Complex::new(phi.sin(), 0.0);
            PureState::new(amps)
        })
        .collect()
}

/// The canonical projector pair at angle θ: A = |0⟩⟨0| and B = |b⟩⟨b| with
/// |b⟩ = cos θ|0⟩ + sin θ|1⟩, in dimension d.
pub fn canonical_pair(theta: f64, d: usize) -> Result<(Projector<f64>, Projector<f64>)> {
    if d < 2 {
        return Err(Error::invalid_parameter("dimension must be at least 2"));
    }
    let a = PureState::basis(d, 0).projector();
    let mut amps = vec![Complex::new(0.0, 0.0); d];
    amps[0] = Complex::new(theta.cos(), 0.0);
    amps[1] = Complex::new(theta.sin(), 0.0);
    let b = PureState::new(amps)?.projector();
    Ok((a, b))
}

/// One variance point per state via the trace formulas.
pub fn scatter(
    a: &ComplexMatrix<f64>,
    b: &ComplexMatrix<f64>,
    states: &[DensityMatrix<f64>],
) -> Result<Vec<VariancePoint<f64>>> {
    states
        .iter()
        .map(|rho| {
            let d_a = variance(a, rho)?;
            let d_b = variance(b, rho)?;
            VariancePoint::new(d_a.min(0.25).max(0.0), d_b.min(0.25).max(0.0))
        })
        .collect()
}

/// A single randomly sampled state family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Pure,
    Mixed,
    Boundary,
}

impl SampleKind {
    pub fn label(&self) -> &'static str {
        match self {
            SampleKind::Pure => "pure",
            SampleKind::Mixed => "mixed",
            SampleKind::Boundary => "boundary",
        }
    }
}

/// Variance points of n random states of one family against the canonical
/// pair, in a deterministic order independent of thread count.
pub fn scatter_records(
    theta: f64,
    d: usize,
    n: usize,
    kind: SampleKind,
    rng: &SeededRng,
) -> Result<Vec<VariancePoint<f64>>> {
    let (a, b) = canonical_pair(theta, d)?;
    let n_chunks = (n + SCATTER_CHUNK - 1) / SCATTER_CHUNK;
    let chunks: Vec<Result<Vec<VariancePoint<f64>>>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut child = rng.child(chunk as u64);
            let count = SCATTER_CHUNK.min(n - chunk * SCATTER_CHUNK);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let rho = match kind {
                    SampleKind::Pure => haar_pure(d, &mut child)?.to_density(),
                    SampleKind::Mixed => random_mixed(d, &mut child)?,
                    SampleKind::Boundary => {
                        boundary_states_qubit(1, d, &mut child)?.remove(0).to_density()
                    }
                };
                let d_a = variance(a.matrix(), &rho)?;
                let d_b = variance(b.matrix(), &rho)?;
                out.push(VariancePoint::new(
                    d_a.min(0.25).max(0.0),
                    d_b.min(0.25).max(0.0),
                )?);
            }
            Ok(out)
        })
        .collect();
    let mut points = Vec::with_capacity(n);
    for c in chunks {
        points.extend(c?);
    }
    Ok(points)
}

/// Which state family feeds the occupancy oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    PureOnly,
    MixedOnly,
    /// Pure, mixed and boundary families together.
    Full,
}

fn variance_of_prob(p: f64) -> f64 {
    (p * (1.0 - p)).max(0.0).min(0.25)
}

/// Probability pair for the canonical pair given the equatorial Bloch shadow
/// (u, w) = (r_z, r_x); valid for any state whose shadow it is.
fn probs_from_shadow(u: f64, w: f64, theta: f64) -> (f64, f64) {
    let c = (2.0 * theta).cos();
    let s = (2.0 * theta).sin();
    (0.5 * (1.0 + u), 0.5 * (1.0 + u * c + w * s))
}

/// Pure qubit state with Bloch vector (w, ±√(1−u²−w²), u); exists whenever
/// u² + w² ≤ 1.
fn pure_state_from_shadow(u: f64, w: f64) -> PureState<f64> {
    let u = u.max(-1.0).min(1.0);
    let beta = u.acos();
    let sin_beta = beta.sin();
    let cos_gamma = if sin_beta > 1e-12 {
        (w / sin_beta).max(-1.0).min(1.0)
    } else {
        1.0
    };
    let gamma = cos_gamma.acos();
    PureState::new(vec![
        Complex::new((beta / 2.0).cos(), 0.0),
        Complex::from_polar((beta / 2.0).sin(), gamma),
    ])
    .expect("trig amplitudes are normalized")
}

/// Probability pair of a witness state, evaluated through the actual state
/// amplitudes rather than the shadow shortcut.
fn witness_probs_qubit(u: f64, w: f64, theta: f64) -> (f64, f64) {
    let psi = pure_state_from_shadow(u, w);
    let a0 = psi.amplitudes()[0];
    let a1 = psi.amplitudes()[1];
    let p_a = a0.norm_sqr();
    let p_b = (a0 * theta.cos() + a1 * theta.sin()).norm_sqr();
    (p_a, p_b)
}

/// Tests whether the variance pair (d_a, d_b) is the image of some Bloch
/// shadow in the unit disk; on success returns the witness probability pair
/// computed through an explicit state of the requested family.
fn qubit_witness(d_a: f64, d_b: f64, theta: f64, kind: OracleKind) -> Option<(f64, f64)> {
    let c = (2.0 * theta).cos();
    // Clamp keeps the aligned and orthogonal limits finite; the disk test
    // then only admits shadows satisfying the degenerate constraint exactly.
    let s = (2.0 * theta).sin().max(1e-9);
    let sa = (1.0 - 4.0 * d_a).max(0.0).sqrt();
    let sb = (1.0 - 4.0 * d_b).max(0.0).sqrt();
    for p_a in [0.5 * (1.0 - sa), 0.5 * (1.0 + sa)] {
        for p_b in [0.5 * (1.0 - sb), 0.5 * (1.0 + sb)] {
            let u = 2.0 * p_a - 1.0;
            let w = (2.0 * p_b - 1.0 - u * c) / s;
            if u * u + w * w <= 1.0 + 1e-12 {
                let (pa, pb) = match kind {
                    // Mixed witness: equatorial Bloch vector (w, 0, u),
                    // radius ≤ 1; probabilities follow the shadow.
                    OracleKind::MixedOnly => probs_from_shadow(u, w, theta),
                    _ => witness_probs_qubit(u, w, theta),
                };
                return Some((pa, pb));
            }
        }
    }
    None
}

/// Corners and center of one grid cell; testing the corners as well as the
/// center marks boundary-straddling cells deterministically, which keeps
/// pure-only and mixed-only grids in near-exact agreement.
fn cell_probe_points(res: usize, i: usize, j: usize) -> [(f64, f64); 5] {
    let step = 0.25 / res as f64;
    let (x0, y0) = (i as f64 * step, j as f64 * step);
    [
        ((i as f64 + 0.5) * step, (j as f64 + 0.5) * step),
        (x0, y0),
        (x0 + step, y0),
        (x0, y0 + step),
        (x0 + step, y0 + step),
    ]
}

/// Witness sweep for the qubit families: every cell containing a probe point
/// in the variance image of the unit Bloch disk gets marked through an
/// explicitly constructed state.
fn witness_sweep_qubit(grid: &mut OccupancyGrid, theta: f64, kind: OracleKind) {
    let res = grid.resolution();
    for i in 0..res {
        for j in 0..res {
            for (d_a, d_b) in cell_probe_points(res, i, j) {
                if let Some((pa, pb)) = qubit_witness(d_a, d_b, theta, kind) {
                    // The witness reproduces the probe point up to rounding;
                    // mark the probed cell directly so edge-of-cell rounding
                    // cannot shift the mark between families.
                    debug_assert!((variance_of_prob(pa) - d_a).abs() < 1e-9);
                    debug_assert!((variance_of_prob(pb) - d_b).abs() < 1e-9);
                    grid.mark_cell(i, j);
                    break;
                }
            }
        }
    }
}

/// Witness sweep for d ≥ 3: states √α(c₀|0⟩+c₁|1⟩) + √(1−α)|2⟩ scale the
/// qubit probability pair by α; feasibility in s = 1/α is a closed-form
/// quadratic, so no α grid is needed.
fn qudit_witness(d_a: f64, d_b: f64, theta: f64) -> Option<(f64, f64)> {
    let c = (2.0 * theta).cos();
    let s2 = (2.0 * theta).sin().max(1e-9);
    let sa = (1.0 - 4.0 * d_a).max(0.0).sqrt();
    let sb = (1.0 - 4.0 * d_b).max(0.0).sqrt();
    for p_a in [0.5 * (1.0 - sa), 0.5 * (1.0 + sa)] {
        for p_b in [0.5 * (1.0 - sb), 0.5 * (1.0 + sb)] {
            // u(s) = 2p_A s − 1, w(s) = (2p_B s − 1 − u(s)c)/sin2θ;
            // need u² + w² ≤ 1 for some s ≥ 1 (α = 1/s).
            let (du, eu) = (2.0 * p_a, -1.0);
            let dw = (2.0 * p_b - 2.0 * p_a * c) / s2;
            let ew = (c - 1.0) / s2;
            let qa = du * du + dw * dw;
            let qb = 2.0 * (du * eu + dw * ew);
            let qc = eu * eu + ew * ew - 1.0;
            let s_star = if qa <= 1e-18 {
                // p_A = p_B = 0: the bare |2⟩ state (α = 0 limit).
                if qc <= 1e-12 {
                    Some(1.0)
                } else {
                    None
                }
            } else {
                let disc = qb * qb - 4.0 * qa * qc;
                if disc < 0.0 {
                    None
                } else {
                    let root = disc.sqrt();
                    let s_lo = (-qb - root) / (2.0 * qa);
                    let s_hi = (-qb + root) / (2.0 * qa);
                    if s_hi < 1.0 - 1e-12 {
                        None
                    } else {
                        Some(s_lo.max(1.0).min(s_hi.max(1.0)))
                    }
                }
            };
            if let Some(s_val) = s_star {
                let alpha = (1.0 / s_val).min(1.0);
                let u = du * s_val + eu;
                let w = dw * s_val + ew;
                let (qa_p, qb_p) = witness_probs_qubit(u.max(-1.0).min(1.0), w, theta);
                return Some((alpha * qa_p, alpha * qb_p));
            }
        }
    }
    None
}

fn witness_sweep_qudit(grid: &mut OccupancyGrid, theta: f64) {
    let res = grid.resolution();
    for i in 0..res {
        for j in 0..res {
            for (d_a, d_b) in cell_probe_points(res, i, j) {
                if qudit_witness(d_a, d_b, theta).is_some() {
                    grid.mark_cell(i, j);
                    break;
                }
            }
        }
    }
}

const SCATTER_CHUNK: usize = 1024;

/// Marks cells from randomly sampled states, in fixed chunks with derived
/// streams so the result is thread-count independent.
fn random_scatter_grid(
    theta: f64,
    d: usize,
    n_samples: usize,
    resolution: usize,
    kind: OracleKind,
    rng: &SeededRng,
) -> Result<OccupancyGrid> {
    let (a, b) = canonical_pair(theta, d)?;
    let n_chunks = (n_samples + SCATTER_CHUNK - 1) / SCATTER_CHUNK;
    let grids: Vec<Result<OccupancyGrid>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut local = OccupancyGrid::new(resolution)?;
            let mut child = rng.child(chunk as u64);
            let count = SCATTER_CHUNK.min(n_samples - chunk * SCATTER_CHUNK);
            for _ in 0..count {
                let rho = match kind {
                    // Full samples mixed here; its caller merges a pure pass.
                    OracleKind::PureOnly => haar_pure(d, &mut child)?.to_density(),
                    _ => random_mixed(d, &mut child)?,
                };
                let d_a = variance(a.matrix(), &rho)?;
                let d_b = variance(b.matrix(), &rho)?;
                local.mark_point(d_a, d_b);
            }
            Ok(local)
        })
        .collect();
    let mut merged = OccupancyGrid::new(resolution)?;
    for g in grids {
        merged.merge(&g?)?;
    }
    Ok(merged)
}

/// Brute-force occupancy oracle for the canonical pair at angle θ in
/// dimension d: random scatter plus deterministic witness sweeps so extremal
/// arcs are hit.
pub fn oracle_region_with(
    theta: f64,
    d: usize,
    n_samples: usize,
    resolution: usize,
    kind: OracleKind,
    rng: &SeededRng,
) -> Result<OccupancyGrid> {
    if n_samples < resolution * resolution {
        return Err(Error::invalid_parameter(
            "need at least resolution² samples",
        ));
    }
    let mut grid = random_scatter_grid(theta, d, n_samples, resolution, kind, rng)?;
    if d == 2 {
        witness_sweep_qubit(&mut grid, theta, kind);
    } else {
        witness_sweep_qudit(&mut grid, theta);
    }
    if kind == OracleKind::Full {
        // Equatorial boundary sweep; for d ≥ 3 these live in the top block.
        let phis = 8 * resolution;
        let (a, b) = canonical_pair(theta, d)?;
        let mut brng = rng.child(u64::MAX);
        let states = boundary_states_qubit(phis, d, &mut brng)?;
        for st in states {
            let rho = st.to_density();
            let d_a = variance(a.matrix(), &rho)?;
            let d_b = variance(b.matrix(), &rho)?;
            grid.mark_point(d_a, d_b);
        }
    }
    Ok(grid)
}

/// Full oracle: pure, mixed and boundary families together.
pub fn oracle_region(
    theta: f64,
    d: usize,
    n_samples: usize,
    resolution: usize,
    rng: &SeededRng,
) -> Result<OccupancyGrid> {
    let mut grid = oracle_region_with(theta, d, n_samples, resolution, OracleKind::PureOnly, rng)?;
    let mixed = oracle_region_with(
        theta,
        d,
        n_samples,
        resolution,
        OracleKind::Full,
        &rng.child(1_000_003),
    )?;
    grid.merge(&mixed)?;
    Ok(grid)
}

/// The four symmetric informationally complete qubit states forming a regular
/// tetrahedron on the Bloch sphere.
pub fn sic_tetrahedron() -> [PureState<f64>; 4] {
    let a = -1.0 / 3.0f64.sqrt();
    let b = (2.0 / 3.0f64).sqrt();
    let omega = 2.0 * std::f64::consts::PI / 3.0;
    let mk = |phase: f64| {
        PureState::new(vec![
            Complex::new(a, 0.0),
            Complex::from_polar(b, phase),
        ])
        .expect("unit by construction")
    };
    [
        PureState::basis(2, 0),
        mk(0.0),
        mk(omega),
        mk(-omega),
    ]
}

/// Sum of the four tetrahedron projector variances; 2/3 for every pure state,
/// 1 at the maximally mixed state.
pub fn sic_variance_sum(rho: &DensityMatrix<f64>) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 2,
        });
    }
    let mut sum = 0.0;
    for psi in sic_tetrahedron() {
        sum += variance(psi.projector().matrix(), rho)?;
    }
    Ok(sum)
}
