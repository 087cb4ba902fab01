//! Photonic three-port experiment simulator: qutrit preparation from
//! waveplate angles, the half-waveplate measurement unitary, multinomial
//! counting statistics, qubit post-selection, and the scatter-dataset runner.

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qcore::{ComplexMatrix, PureState};
use crate::regions::VariancePoint;
use crate::sampling::{haar_pure, SeededRng};
use crate::Result;

/// Default shots per state and setting.
pub const DEFAULT_SHOTS: u64 = 45_000;
/// Default repeat count per state and setting.
pub const DEFAULT_REPEATS: u32 = 5;
/// Default half-waveplate settings θ₂ for the four measured projectors.
pub const DEFAULT_SETTINGS: [f64; 4] = [
    0.0,
    5.0 * std::f64::consts::PI / 72.0,
    std::f64::consts::PI / 12.0,
    std::f64::consts::PI / 8.0,
];
/// Projector pairs (by setting index) whose variance planes are scatter-plotted.
pub const DEFAULT_PAIRS: [(usize, usize); 4] = [(0, 1), (0, 2), (0, 3), (2, 3)];

/// Preparation angles: |ψ⟩ = e^{iφ₁}cosθ_A|0⟩ + e^{iφ₂}sinθ_A sinθ_B|1⟩
/// − sinθ_A cosθ_B|2⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrepConfig {
    pub theta_a: f64,
    pub theta_b: f64,
    pub phi_1: f64,
    pub phi_2: f64,
}

/// Measurement setting: the HWP₂ angle θ₂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasConfig {
    pub theta_2: f64,
}

impl MeasConfig {
    /// Angle between the projectors of two settings: θ_{j,k} = 2(θ₂ₖ − θ₂ⱼ).
    pub fn pair_angle(&self, other: &MeasConfig) -> f64 {
        2.0 * (other.theta_2 - self.theta_2)
    }
}

/// Raw three-port counts for one state and setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub n0: u64,
    pub n1: u64,
    pub n2: u64,
}

impl CountRecord {
    pub fn total(&self) -> u64 {
        self.n0 + self.n1 + self.n2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    /// Haar-sampled generic qutrit state.
    Generic,
    /// Real-amplitude state with mode |2⟩ unoccupied.
    Boundary,
}

/// Optional imperfection hooks; both default to the ideal values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    /// Standard deviation of Gaussian jitter on θ₂, radians.
    pub angle_jitter: f64,
    /// Interference visibility V ∈ [0, 1] scaling off-diagonal coherences.
    pub visibility: f64,
}

impl Default for Perturbation {
    fn default() -> Self {
        Self {
            angle_jitter: 0.0,
            visibility: 1.0,
        }
    }
}

/// Full experiment description: state list, settings, counting depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub states: Vec<(PrepConfig, StateFamily)>,
    pub settings: Vec<MeasConfig>,
    pub pairs: Vec<(usize, usize)>,
    pub shots: u64,
    pub repeats: u32,
    pub seed: u64,
    #[serde(default)]
    pub perturbation: Perturbation,
}

/// A measured variance point with its per-axis binomial standard deviations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub state_index: usize,
    pub family: StateFamily,
    pub d_a: f64,
    pub d_b: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
}

/// Scatter dataset for one projector pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDataset {
    pub pair: (usize, usize),
    /// Angle between the pair's projectors.
    pub theta: f64,
    pub qutrit_points: Vec<PointRecord>,
    /// Post-selected two-port points; absent entries mean no D₀/D₁ events.
    pub qubit_points: Vec<PointRecord>,
}

/// Builds the qutrit state from waveplate angles.
pub fn prepare_state(cfg: &PrepConfig) -> PureState<f64> {
    let amps = vec![
        Complex::from_polar(cfg.theta_a.cos(), cfg.phi_1),
        Complex::from_polar(cfg.theta_a.sin() * cfg.theta_b.sin(), cfg.phi_2),
        Complex::new(-cfg.theta_a.sin() * cfg.theta_b.cos(), 0.0),
    ];
    PureState::normalized(amps).expect("trig amplitudes have unit norm")
}

/// Inverts `prepare_state` up to global phase, so arbitrary qutrit states can
/// enter a plan.
pub fn prep_config_for(state: &PureState<f64>) -> Result<PrepConfig> {
    if state.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: 3,
        });
    }
    let a = state.amplitudes();
    // Global phase chosen so the |2⟩ amplitude is real and nonpositive.
    let phase = if a[2].norm() > 1e-15 {
        -a[2].conj() / Complex::new(a[2].norm(), 0.0)
    } else {
        Complex::new(1.0, 0.0)
    };
    let a0 = a[0] * phase;
    let a1 = a[1] * phase;
    let a2 = a[2] * phase;
    let theta_a = a0.norm().min(1.0).acos();
    let theta_b = a1.norm().atan2(a2.norm());
    Ok(PrepConfig {
        theta_a,
        theta_b,
        phi_1: if a0.norm() > 1e-15 { a0.arg() } else { 0.0 },
        phi_2: if a1.norm() > 1e-15 { a1.arg() } else { 0.0 },
    })
}

/// The HWP measurement unitary: a real orthogonal reflection mixing modes
/// |0⟩ and |1⟩, leaving |2⟩ alone.
pub fn measurement_unitary(theta_2: f64) -> ComplexMatrix<f64> {
    let c = (2.0 * theta_2).cos();
    let s = (2.0 * theta_2).sin();
    ComplexMatrix::from_real(3, &[c, s, 0.0, s, -c, 0.0, 0.0, 0.0, 1.0])
        .expect("entry count matches")
}

fn port_state(theta_2: f64, port: usize) -> PureState<f64> {
    let u = measurement_unitary(theta_2);
    let amps = (0..3).map(|col| u.get(port, col).conj()).collect();
    PureState::normalized(amps).expect("unitary rows are unit")
}

/// Rank-1 projectors for the three detector ports; mutually orthogonal and
/// summing to the identity.
pub fn port_projectors(
    theta_2: f64,
) -> (ComplexMatrix<f64>, ComplexMatrix<f64>, ComplexMatrix<f64>) {
    let p = |port| port_state(theta_2, port).projector().matrix().clone();
    (p(0), p(1), p(2))
}

/// Ideal port probabilities pⱼ = |⟨ψⱼ|state⟩|², with optional visibility
/// damping of the off-diagonal coherences.
pub fn port_probabilities(
    state: &PureState<f64>,
    theta_2: f64,
    visibility: f64,
) -> Result<[f64; 3]> {
    if state.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: 3,
        });
    }
    let mut probs = [0.0f64; 3];
    for port in 0..3 {
        let psi = port_state(theta_2, port);
        let ideal = state.overlap(&psi)?;
        if visibility < 1.0 {
            // V interpolates between the coherent overlap and the classical
            // (diagonal) transmission.
            let classical: f64 = psi
                .amplitudes()
                .iter()
                .zip(state.amplitudes())
                .map(|(m, s)| m.norm_sqr() * s.norm_sqr())
                .sum();
            probs[port] = visibility * ideal + (1.0 - visibility) * classical;
        } else {
            probs[port] = ideal;
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::ProbabilityNormalization { sum });
    }
    for p in &mut probs {
        *p = (*p / sum).max(0.0).min(1.0);
    }
    Ok(probs)
}

/// Multinomial counting: N shots distributed over the three ports.
pub fn simulate_counts(
    state: &PureState<f64>,
    theta_2: f64,
    n: u64,
    rng: &mut SeededRng,
) -> Result<CountRecord> {
    simulate_counts_perturbed(state, theta_2, n, &Perturbation::default(), rng)
}

pub fn simulate_counts_perturbed(
    state: &PureState<f64>,
    theta_2: f64,
    n: u64,
    perturbation: &Perturbation,
    rng: &mut SeededRng,
) -> Result<CountRecord> {
    if n == 0 {
        return Err(Error::invalid_parameter("need at least one shot"));
    }
    let jitter: f64 = if perturbation.angle_jitter > 0.0 {
        let z: f64 = rng.sample(StandardNormal);
        z * perturbation.angle_jitter
    } else {
        0.0
    };
    let probs = port_probabilities(state, theta_2 + jitter, perturbation.visibility)?;
    // Sequential binomial conditioning realizes the multinomial draw.
    let n0 = Binomial::new(n, probs[0].min(1.0))
        .expect("probability in range")
        .sample(rng);
    let rest = n - n0;
    let p1_cond = if probs[0] >= 1.0 {
        0.0
    } else {
        (probs[1] / (1.0 - probs[0])).min(1.0)
    };
    let n1 = if rest == 0 {
        0
    } else {
        Binomial::new(rest, p1_cond)
            .expect("probability in range")
            .sample(rng)
    };
    Ok(CountRecord {
        n0,
        n1,
        n2: rest - n1,
    })
}

/// Variance-point estimate from two count fractions: (p̂(1−p̂)) per axis.
pub fn empirical_point(
    counts_a: (u64, u64),
    counts_b: (u64, u64),
) -> Result<VariancePoint<f64>> {
    let frac = |(n, total): (u64, u64)| -> Result<f64> {
        if total == 0 {
            return Err(Error::invalid_parameter("zero total count"));
        }
        Ok(n as f64 / total as f64)
    };
    let p_a = frac(counts_a)?;
    let p_b = frac(counts_b)?;
    VariancePoint::new(p_a * (1.0 - p_a), p_b * (1.0 - p_b))
}

/// Restricts a count record to the D₀/D₁ qubit subspace.
pub fn postselect_qubit(counts: &CountRecord) -> Result<(u64, u64, u64)> {
    let kept = counts.n0 + counts.n1;
    if kept == 0 {
        return Err(Error::EmptyPostSelection);
    }
    Ok((counts.n0, counts.n1, kept))
}

/// Standard deviation of the variance estimate p̂(1−p̂), from the adjusted
/// binomial rate p̃ = (n+1)/(N+2).
pub fn variance_sigma(n: u64, total: u64) -> f64 {
    let p = (n as f64 + 1.0) / (total as f64 + 2.0);
    let sigma_p = (p * (1.0 - p) / total as f64).sqrt();
    (1.0 - 2.0 * p).abs() * sigma_p + sigma_p * sigma_p
}

/// Default plan: 300 Haar states plus 100 boundary states, the four
/// half-waveplate settings, 45000 shots, five repeats.
pub fn default_plan(seed: u64) -> Result<ExperimentPlan> {
    let mut rng = SeededRng::new(seed, stream_label("plan"));
    let mut states = Vec::with_capacity(400);
    for _ in 0..300 {
        let psi = haar_pure(3, &mut rng)?;
        states.push((prep_config_for(&psi)?, StateFamily::Generic));
    }
    for k in 0..100 {
        let phi = std::f64::consts::TAU * k as f64 / 100.0;
        states.push((
            PrepConfig {
                theta_a: phi,
                theta_b: std::f64::consts::FRAC_PI_2,
                phi_1: 0.0,
                phi_2: 0.0,
            },
            StateFamily::Boundary,
        ));
    }
    Ok(ExperimentPlan {
        states,
        settings: DEFAULT_SETTINGS.map(|theta_2| MeasConfig { theta_2 }).to_vec(),
        pairs: DEFAULT_PAIRS.to_vec(),
        shots: DEFAULT_SHOTS,
        repeats: DEFAULT_REPEATS,
        seed,
        perturbation: Perturbation::default(),
    })
}

// Stable RNG stream label from a short tag (FNV-1a).
fn stream_label(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

/// Runs the full plan: per state and setting, repeat-summed counts; per pair,
/// qutrit points from raw D₀ fractions and qubit points from post-selection.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<PairDataset>> {
    for &(j, k) in &plan.pairs {
        if j >= plan.settings.len() || k >= plan.settings.len() {
            return Err(Error::invalid_parameter("pair index out of range"));
        }
    }
    if plan.shots == 0 || plan.repeats == 0 {
        return Err(Error::invalid_parameter("shots and repeats must be positive"));
    }
    let base = SeededRng::new(plan.seed, stream_label("experiment"));

    // counts[state][setting] summed over repeats.
    let per_state: Vec<Result<Vec<CountRecord>>> = plan
        .states
        .par_iter()
        .enumerate()
        .map(|(idx, (cfg, _))| {
            let psi = prepare_state(cfg);
            let mut rng = base.child(idx as u64);
            plan.settings
                .iter()
                .map(|setting| {
                    let mut sum = CountRecord { n0: 0, n1: 0, n2: 0 };
                    for _ in 0..plan.repeats {
                        let c = simulate_counts_perturbed(
                            &psi,
                            setting.theta_2,
                            plan.shots,
                            &plan.perturbation,
                            &mut rng,
                        )?;
                        sum.n0 += c.n0;
                        sum.n1 += c.n1;
                        sum.n2 += c.n2;
                    }
                    Ok(sum)
                })
                .collect()
        })
        .collect();
    let per_state: Vec<Vec<CountRecord>> =
        per_state.into_iter().collect::<Result<_>>()?;

    let mut datasets = Vec::with_capacity(plan.pairs.len());
    for &(j, k) in &plan.pairs {
        let theta = plan.settings[j].pair_angle(&plan.settings[k]).abs();
        let mut qutrit_points = Vec::with_capacity(plan.states.len());
        let mut qubit_points = Vec::new();
        for (idx, counts) in per_state.iter().enumerate() {
            let family = plan.states[idx].1;
            let (ca, cb) = (&counts[j], &counts[k]);
            let point = empirical_point((ca.n0, ca.total()), (cb.n0, cb.total()))?;
            qutrit_points.push(PointRecord {
                state_index: idx,
                family,
                d_a: point.d_a,
                d_b: point.d_b,
                sigma_a: variance_sigma(ca.n0, ca.total()),
                sigma_b: variance_sigma(cb.n0, cb.total()),
            });
            if let (Ok(psa), Ok(psb)) = (postselect_qubit(ca), postselect_qubit(cb)) {
                let point = empirical_point((psa.0, psa.2), (psb.0, psb.2))?;
                qubit_points.push(PointRecord {
                    state_index: idx,
                    family,
                    d_a: point.d_a,
                    d_b: point.d_b,
                    sigma_a: variance_sigma(psa.0, psa.2),
                    sigma_b: variance_sigma(psb.0, psb.2),
                });
            }
        }
        datasets.push(PairDataset {
            pair: (j, k),
            theta,
            qutrit_points,
            qubit_points,
        });
    }
    Ok(datasets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::variance;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    #[test]
    fn prepare_state_examples() {
        let s = prepare_state(&PrepConfig {
            theta_a: 0.0,
            theta_b: 0.3,
            phi_1: 0.0,
            phi_2: 0.0,
        });
        assert!(s.overlap(&PureState::basis(3, 0)).unwrap() > 1.0 - 1e-14);

        let s = prepare_state(&PrepConfig {
            theta_a: FRAC_PI_2,
            theta_b: FRAC_PI_2,
            phi_1: 0.0,
            phi_2: 0.0,
        });
        assert!(s.overlap(&PureState::basis(3, 1)).unwrap() > 1.0 - 1e-14);

        let s = prepare_state(&PrepConfig {
            theta_a: FRAC_PI_4,
            theta_b: FRAC_PI_2,
            phi_1: 0.0,
            phi_2: 0.0,
        });
        let amps = s.amplitudes();
        assert!((amps[0].re - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        assert!((amps[1].re - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        assert!(amps[2].norm() < 1e-14);
    }

    #[test]
    fn prep_config_round_trips_haar_states() {
        let mut rng = SeededRng::new(20, 0);
        for _ in 0..200 {
            let psi = haar_pure(3, &mut rng).unwrap();
            let cfg = prep_config_for(&psi).unwrap();
            let back = prepare_state(&cfg);
            let ov = psi.overlap(&back).unwrap();
            assert!(ov > 1.0 - 1e-12, "overlap={ov}");
        }
    }

    #[test]
    fn measurement_unitary_structure() {
        let u = measurement_unitary(0.0);
        let expected =
            ComplexMatrix::from_real(3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(u.max_abs_diff(&expected).unwrap() < 1e-15);

        let u = measurement_unitary(FRAC_PI_8);
        assert!((u.get(0, 0).re - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        assert!((u.get(0, 1).re - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);

        for k in 0..20 {
            let u = measurement_unitary(0.1 * k as f64);
            assert!(u.unitarity_deviation() < 1e-14);
            let u2 = u.mul(&u).unwrap();
            assert!(u2.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-14);
        }
    }

    #[test]
    fn port_projectors_complete_and_match_known_form() {
        let (p0, _, _) = port_projectors(0.0);
        let expected =
            ComplexMatrix::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(p0.max_abs_diff(&expected).unwrap() < 1e-15);

        let (p0, _, _) = port_projectors(FRAC_PI_8);
        for i in 0..2 {
            for j in 0..2 {
                assert!((p0.get(i, j).re - 0.5).abs() < 1e-14);
            }
        }

        let mut rng = SeededRng::new(21, 0);
        for _ in 0..100 {
            let t2: f64 = rng.gen_range(0.0..PI);
            let (p0, p1, p2) = port_projectors(t2);
            let sum = p0.add(&p1).unwrap().add(&p2).unwrap();
            assert!(sum.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-14);
            assert!(p0.mul(&p1).unwrap().max_abs() < 1e-14);
        }
    }

    #[test]
    fn pair_angles_match_setting_table() {
        let settings: Vec<MeasConfig> = DEFAULT_SETTINGS
            .map(|theta_2| MeasConfig { theta_2 })
            .to_vec();
        let expected = [
            ((0, 1), 5.0 * PI / 36.0),
            ((0, 2), PI / 6.0),
            ((0, 3), FRAC_PI_4),
            ((2, 3), PI / 12.0),
        ];
        for ((j, k), angle) in expected {
            assert!((settings[j].pair_angle(&settings[k]) - angle).abs() < 1e-15);
        }
    }

    #[test]
    fn simulate_counts_deterministic_ports() {
        let mut rng = SeededRng::new(22, 0);
        let c = simulate_counts(&PureState::basis(3, 2), 0.7, 1000, &mut rng).unwrap();
        assert_eq!((c.n0, c.n1, c.n2), (0, 0, 1000));

        let c = simulate_counts(&PureState::basis(3, 0), 0.0, 1000, &mut rng).unwrap();
        assert_eq!((c.n0, c.n1, c.n2), (1000, 0, 0));

        let plus = prepare_state(&PrepConfig {
            theta_a: FRAC_PI_4,
            theta_b: FRAC_PI_2,
            phi_1: 0.0,
            phi_2: 0.0,
        });
        let c = simulate_counts(&plus, FRAC_PI_8, 45_000, &mut rng).unwrap();
        // ⟨ψ₀| = (1/√2, 1/√2, 0) matches the state exactly.
        assert_eq!(c.n0, 45_000);
    }

    #[test]
    fn ideal_statistics_limit_matches_trace_variance() {
        // Exact port probabilities reproduce the analytic projector variance.
        let mut rng = SeededRng::new(23, 0);
        for _ in 0..50 {
            let psi = haar_pure(3, &mut rng).unwrap();
            let t2: f64 = rng.gen_range(0.0..PI);
            let probs = port_probabilities(&psi, t2, 1.0).unwrap();
            assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let (p0, _, _) = port_projectors(t2);
            let analytic = variance(&p0, &psi.to_density()).unwrap();
            let from_prob = probs[0] * (1.0 - probs[0]);
            assert!((analytic - from_prob).abs() < 1e-12);
        }
    }

    #[test]
    fn empirical_point_and_bias() {
        let p = empirical_point((100, 400), (200, 400)).unwrap();
        assert!((p.d_a - 0.25 * 0.75).abs() < 1e-15);
        assert!((p.d_b - 0.25).abs() < 1e-15);
        assert!(empirical_point((0, 0), (1, 2)).is_err());

        // Mean of the estimator at p = 0.3, N = 45000 stays within three
        // standard errors of p(1−p).
        let mut rng = SeededRng::new(24, 0);
        let n = 45_000u64;
        let reps = 10_000;
        let mut sum = 0.0;
        for _ in 0..reps {
            let hits = Binomial::new(n, 0.3).unwrap().sample(&mut rng);
            let p_hat = hits as f64 / n as f64;
            sum += p_hat * (1.0 - p_hat);
        }
        let mean = sum / reps as f64;
        // Var(p̂(1−p̂)) ≈ ((1−2p)²p(1−p)/N); standard error of the mean adds
        // the 1/√reps factor. The estimator bias is −p(1−p)/N.
        let se = ((1.0f64 - 0.6).powi(2) * 0.21 / n as f64).sqrt() / (reps as f64).sqrt();
        let bias = 0.21 / n as f64;
        assert!((mean - 0.21).abs() < 3.0 * se + bias, "mean = {mean}");
    }

    #[test]
    fn postselect_examples() {
        let c = CountRecord {
            n0: 100,
            n1: 300,
            n2: 200,
        };
        assert_eq!(postselect_qubit(&c).unwrap(), (100, 300, 400));
        let empty = CountRecord {
            n0: 0,
            n1: 0,
            n2: 50,
        };
        assert!(matches!(
            postselect_qubit(&empty),
            Err(Error::EmptyPostSelection)
        ));
    }

    #[test]
    fn boundary_states_keep_all_counts() {
        let plus = prepare_state(&PrepConfig {
            theta_a: 1.1,
            theta_b: FRAC_PI_2,
            phi_1: 0.0,
            phi_2: 0.0,
        });
        let mut rng = SeededRng::new(25, 0);
        let c = simulate_counts(&plus, FRAC_PI_8, 45_000, &mut rng).unwrap();
        assert_eq!(c.n2, 0);
        let (_, _, kept) = postselect_qubit(&c).unwrap();
        assert_eq!(kept, 45_000);
    }

    #[test]
    fn small_plan_runs_and_is_deterministic() {
        let mut plan = default_plan(77).unwrap();
        plan.states.truncate(12);
        plan.shots = 2_000;
        plan.repeats = 2;
        let a = run_experiment(&plan).unwrap();
        let b = run_experiment(&plan).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        for ds in &a {
            assert_eq!(ds.qutrit_points.len(), 12);
        }
        // Pair (0, 2) spans settings 0 and π/12: angle π/6.
        assert!((a[1].theta - PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn default_plan_shape() {
        let plan = default_plan(1).unwrap();
        assert_eq!(plan.states.len(), 400);
        assert_eq!(
            plan.states
                .iter()
                .filter(|(_, f)| *f == StateFamily::Boundary)
                .count(),
            100
        );
        assert_eq!(plan.settings.len(), 4);
        assert_eq!(plan.shots, 45_000);
        assert_eq!(plan.repeats, 5);
        for (cfg, family) in &plan.states {
            if *family == StateFamily::Boundary {
                let s = prepare_state(cfg);
                assert!(s.amplitudes()[2].norm() < 1e-14);
            }
        }
    }

    #[test]
    fn visibility_damps_coherence() {
        let plus = prepare_state(&PrepConfig {
            theta_a: FRAC_PI_4,
            theta_b: FRAC_PI_2,
            phi_1: 0.0,
            phi_2: 0.0,
        });
        let ideal = port_probabilities(&plus, FRAC_PI_8, 1.0).unwrap();
        let damped = port_probabilities(&plus, FRAC_PI_8, 0.9).unwrap();
        assert!((ideal[0] - 1.0).abs() < 1e-12);
        assert!(damped[0] < ideal[0]);
        assert!((damped.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
