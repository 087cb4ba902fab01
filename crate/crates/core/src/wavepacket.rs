//! Free Gaussian wave packets: closed-form position and momentum moments,
//! the x-p uncertainty region predicate, and the inverse construction that
//! hits any admissible spread pair.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// Free Gaussian packet ψ(x,0) ∝ e^{−x²/2a² + ik₀x/a} evolving for time t
/// under p²/2m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPacket<T: Scalar> {
    /// Width parameter, > 0.
    pub a: T,
    /// Dimensionless wavenumber parameter.
    pub k0: T,
    /// Mass, > 0.
    pub m: T,
    /// Reduced action constant, > 0.
    pub hbar: T,
    /// Elapsed free evolution time, ≥ 0.
    pub t: T,
}

impl<T: Scalar> GaussianPacket<T> {
    pub fn new(a: T, k0: T, m: T, hbar: T, t: T) -> Result<Self> {
        if !(a > T::zero()) || !(m > T::zero()) || !(hbar > T::zero()) {
            return Err(Error::invalid_parameter(
                "width, mass and hbar must be strictly positive",
            ));
        }
        if !(t >= T::zero()) {
            return Err(Error::invalid_parameter("time must be nonnegative"));
        }
        Ok(Self { a, k0, m, hbar, t })
    }
}

/// (⟨x⟩, ⟨x²⟩) at time t.
pub fn position_stats<T: Scalar>(p: &GaussianPacket<T>) -> (T, T) {
    let drift = p.hbar * p.k0 * p.t / (p.m * p.a);
    let spread_sq = p.a * p.a * T::half()
        + p.hbar * p.hbar * p.t * p.t / (T::two() * p.m * p.m * p.a * p.a);
    (drift, spread_sq + drift * drift)
}

/// (⟨p⟩, ⟨p²⟩); time-independent for free evolution.
pub fn momentum_stats<T: Scalar>(p: &GaussianPacket<T>) -> (T, T) {
    let mean = p.hbar * p.k0 / p.a;
    let second = p.hbar * p.hbar / (T::two() * p.a * p.a) + mean * mean;
    (mean, second)
}

/// Standard deviations (Δx, Δp); Δp is exactly t-invariant.
pub fn spreads<T: Scalar>(p: &GaussianPacket<T>) -> (T, T) {
    let dx = (p.a * p.a * T::half()
        + p.hbar * p.hbar * p.t * p.t / (T::two() * p.m * p.m * p.a * p.a))
        .sqrt();
    let dp = p.hbar / (T::two().sqrt() * p.a);
    (dx, dp)
}

/// The x-p uncertainty region: x > 0, y > 0 and x·y ≥ ħ/2 (with a relative
/// 1e-12 boundary band so boundary points count as inside).
pub fn xp_membership<T: Scalar>(x: T, y: T, hbar: T) -> bool {
    x > T::zero() && y > T::zero() && x * y >= hbar * (T::half() - T::lit(1e-12))
}

/// Constructs a packet whose spreads equal the target pair, proving the
/// region is exactly filled; errors when the target violates x·y ≥ ħ/2.
pub fn solve_packet_for<T: Scalar>(
    x_target: T,
    y_target: T,
    m: T,
    hbar: T,
) -> Result<GaussianPacket<T>> {
    if !(x_target > T::zero()) || !(y_target > T::zero()) {
        return Err(Error::invalid_parameter("targets must be strictly positive"));
    }
    if !(m > T::zero()) || !(hbar > T::zero()) {
        return Err(Error::invalid_parameter("mass and hbar must be strictly positive"));
    }
    if !xp_membership(x_target, y_target, hbar) {
        return Err(Error::OutOfAnalyticScope {
            reason: format!(
                "target ({}, {}) has product below hbar/2; no state exists",
                x_target.to_f64().unwrap_or(f64::NAN),
                y_target.to_f64().unwrap_or(f64::NAN)
            ),
        });
    }
    let a = hbar / (T::two().sqrt() * y_target);
    let arg = (T::two() * x_target * x_target - a * a).max(T::zero());
    let t = m * a / hbar * arg.sqrt();
    GaussianPacket::new(a, T::zero(), m, hbar, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SeededRng;
    use num_complex::Complex;
    use rand::Rng;

    fn packet(a: f64, k0: f64, m: f64, hbar: f64, t: f64) -> GaussianPacket<f64> {
        GaussianPacket::new(a, k0, m, hbar, t).unwrap()
    }

    /// ψ(x,t) in closed form: the dispersed Gaussian with complex width
    /// 1 + iħt/(ma²). Used only as an integration oracle.
    fn psi(p: &GaussianPacket<f64>, x: f64) -> Complex<f64> {
        let tau = Complex::new(1.0, p.hbar * p.t / (p.m * p.a * p.a));
        let beta = tau.inv();
        let c0 = (p.a * p.a * std::f64::consts::PI).powf(-0.25);
        let z = Complex::new(x / p.a, -p.k0);
        (beta.sqrt() * c0) * (-beta * z * z * 0.5 - 0.5 * p.k0 * p.k0).exp()
    }

    fn psi_derivs(p: &GaussianPacket<f64>, x: f64) -> (Complex<f64>, Complex<f64>, Complex<f64>) {
        let tau = Complex::new(1.0, p.hbar * p.t / (p.m * p.a * p.a));
        let beta = tau.inv();
        let w = psi(p, x);
        let z = Complex::new(x / p.a, -p.k0);
        let d1 = -beta * z / p.a * w;
        let d2 = (beta * beta * z * z - beta) / (p.a * p.a) * w;
        (w, d1, d2)
    }

    /// Simpson quadrature of the four moments from the explicit ψ(x,t).
    fn quadrature_moments(p: &GaussianPacket<f64>) -> (f64, f64, f64, f64) {
        let (mean_x, _) = position_stats(p);
        let (dx, _) = spreads(p);
        let half_width = 12.0 * (dx + p.k0.abs() * p.a + 1.0);
        let n = 8000usize;
        let h = 2.0 * half_width / n as f64;
        let mut acc = [0.0f64; 4];
        for k in 0..=n {
            let x = mean_x - half_width + k as f64 * h;
            let weight = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let (w, d1, d2) = psi_derivs(p, x);
            let dens = w.norm_sqr();
            acc[0] += weight * x * dens;
            acc[1] += weight * x * x * dens;
            // ⟨p⟩ = ∫ψ*(−iħ)ψ′, ⟨p²⟩ = ∫ψ*(−ħ²)ψ″.
            acc[2] += weight * (w.conj() * Complex::new(0.0, -p.hbar) * d1).re;
            acc[3] += weight * (w.conj() * d2 * (-p.hbar * p.hbar)).re;
        }
        let scale = h / 3.0;
        (acc[0] * scale, acc[1] * scale, acc[2] * scale, acc[3] * scale)
    }

    #[test]
    fn position_stats_examples() {
        let (mean, second) = position_stats(&packet(1.0, 1.0, 1.0, 1.0, 0.0));
        assert_eq!(mean, 0.0);
        assert!((second - 0.5).abs() < 1e-15);

        let (mean, second) = position_stats(&packet(1.0, 1.0, 1.0, 1.0, 2.0));
        assert!((mean - 2.0).abs() < 1e-15);
        assert!((second - 6.5).abs() < 1e-15);

        for t in [0.0, 0.5, 3.0] {
            let (mean, _) = position_stats(&packet(1.3, 0.0, 2.0, 1.0, t));
            assert_eq!(mean, 0.0);
        }
    }

    #[test]
    fn momentum_stats_examples() {
        let (mean, second) = momentum_stats(&packet(1.0, 0.0, 1.0, 1.0, 0.7));
        assert_eq!(mean, 0.0);
        assert!((second - 0.5).abs() < 1e-15);

        let (mean, second) = momentum_stats(&packet(1.0, 1.0, 1.0, 1.0, 0.0));
        assert!((mean - 1.0).abs() < 1e-15);
        assert!((second - 1.5).abs() < 1e-15);

        assert_eq!(
            momentum_stats(&packet(0.8, 1.7, 1.0, 1.0, 0.0)),
            momentum_stats(&packet(0.8, 1.7, 1.0, 1.0, 5.0))
        );
    }

    #[test]
    fn spreads_minimum_uncertainty_at_t0() {
        let (dx, dp) = spreads(&packet(1.0, 0.3, 1.0, 1.0, 0.0));
        assert!((dx - 1.0 / 2.0f64.sqrt()).abs() < 1e-15);
        assert!((dp - 1.0 / 2.0f64.sqrt()).abs() < 1e-15);
        assert!((dx * dp - 0.5).abs() < 1e-15);
    }

    #[test]
    fn spreads_product_bounded_below() {
        let mut rng = SeededRng::new(11, 0);
        for _ in 0..10_000 {
            let p = packet(
                rng.gen_range(0.05..5.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.0..10.0),
            );
            let (dx, dp) = spreads(&p);
            assert!(dx * dp >= p.hbar / 2.0 - 1e-12 * p.hbar);
            // Two formula paths for Δx agree.
            let (mean, second) = position_stats(&p);
            assert!((dx * dx - (second - mean * mean)).abs() < 1e-10 * second.max(1.0));
        }
    }

    #[test]
    fn spread_growth_structure() {
        let base = packet(1.0, 0.0, 1.0, 1.0, 0.0);
        let late = packet(1.0, 0.0, 1.0, 1.0, 1000.0);
        let (dx0, dp0) = spreads(&base);
        let (dx1, dp1) = spreads(&late);
        assert_eq!(dp0, dp1);
        // Large-t slope approaches ħ/(√2 m a).
        assert!((dx1 / 1000.0 - 1.0 / 2.0f64.sqrt()).abs() < 1e-3);
        assert!(dx1 > dx0);
    }

    #[test]
    fn xp_membership_examples() {
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!(xp_membership(inv_sqrt2, inv_sqrt2, 1.0));
        assert!(!xp_membership(1.0, 0.4, 1.0));
        assert!(xp_membership(10.0, 10.0, 1.0));
        assert!(!xp_membership(-1.0, 1.0, 1.0));
    }

    #[test]
    fn solve_packet_examples() {
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let p = solve_packet_for(inv_sqrt2, inv_sqrt2, 1.0, 1.0).unwrap();
        assert!((p.a - 1.0).abs() < 1e-12);
        assert!(p.t.abs() < 1e-6);

        let p = solve_packet_for(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!((p.a - inv_sqrt2).abs() < 1e-12);
        assert!((p.t - 15.0f64.sqrt() / 2.0).abs() < 1e-12);
        let (dx, dp) = spreads(&p);
        assert!((dx - 2.0).abs() < 1e-12);
        assert!((dp - 1.0).abs() < 1e-12);

        assert!(solve_packet_for(1.0, 0.4, 1.0, 1.0).is_err());
    }

    #[test]
    fn solve_round_trips_random_targets() {
        let mut rng = SeededRng::new(12, 0);
        let mut done = 0;
        while done < 10_000 {
            let x: f64 = rng.gen_range(0.05..10.0);
            let y: f64 = rng.gen_range(0.05..10.0);
            let hbar = rng.gen_range(0.1..3.0);
            if x * y < hbar / 2.0 * (1.0 + 1e-9) {
                continue;
            }
            let p = solve_packet_for(x, y, rng.gen_range(0.1..5.0), hbar).unwrap();
            let (dx, dp) = spreads(&p);
            assert!((dx - x).abs() <= 1e-9 * x, "dx={dx}, x={x}");
            assert!((dp - y).abs() <= 1e-9 * y);
            done += 1;
        }
    }

    #[test]
    fn quadrature_oracle_matches_formulas() {
        let mut rng = SeededRng::new(13, 0);
        for _ in 0..20 {
            let p = packet(
                rng.gen_range(0.3..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.5..3.0),
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.0..3.0),
            );
            let (qx, qx2, qp, qp2) = quadrature_moments(&p);
            let (mx, mx2) = position_stats(&p);
            let (mp, mp2) = momentum_stats(&p);
            let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1e-3);
            assert!(rel(qx, mx) < 1e-6, "⟨x⟩ {qx} vs {mx}");
            assert!(rel(qx2, mx2) < 1e-6, "⟨x²⟩ {qx2} vs {mx2}");
            assert!(rel(qp, mp) < 1e-6, "⟨p⟩ {qp} vs {mp}");
            assert!(rel(qp2, mp2) < 1e-6, "⟨p²⟩ {qp2} vs {mp2}");
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(GaussianPacket::new(0.0, 0.0, 1.0, 1.0, 0.0).is_err());
        assert!(GaussianPacket::new(1.0, 0.0, -1.0, 1.0, 0.0).is_err());
        assert!(GaussianPacket::new(1.0, 0.0, 1.0, 1.0, -0.1).is_err());
    }
}
