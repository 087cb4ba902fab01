//! Analytic uncertainty-region membership and boundary computation for
//! projector pairs: the qubit triangle/ellipse region, the qudit
//! parabola-extended region, and the quadratic-in-α feasibility cross-check.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::jordan::principal_angles;
use crate::qcore::{shift_scale_to_projector, ComplexMatrix, Projector};
use crate::scalar::Scalar;
use crate::Result;

/// Default width of the boundary band, in expression units.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point (ΔA, ΔB) of projector variances; both coordinates in [0, 1/4].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariancePoint<T: Scalar> {
    pub d_a: T,
    pub d_b: T,
}

impl<T: Scalar> VariancePoint<T> {
    pub fn new(d_a: T, d_b: T) -> Result<Self> {
        let lo = T::lit(-1e-12);
        let hi = T::quarter() + T::lit(1e-12);
        if d_a < lo || d_a > hi || d_b < lo || d_b > hi {
            return Err(Error::invalid_parameter(format!(
                "variance point ({}, {}) outside [0, 1/4]",
                d_a.to_f64().unwrap_or(f64::NAN),
                d_b.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(Self { d_a, d_b })
    }

    /// 45°-rotated coordinates about the ellipse center (1/8, 1/8).
    pub fn rotated(&self) -> (T, T) {
        let inv_sqrt2 = T::one() / T::two().sqrt();
        let xa = self.d_a - T::lit(0.125);
        let xb = self.d_b - T::lit(0.125);
        ((xa + xb) * inv_sqrt2, (xb - xa) * inv_sqrt2)
    }
}

/// Which dimension class an analytic region belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimClass {
    Qubit,
    /// d ≥ 3.
    Qudit,
}

/// Angle plus dimension class fully determine the analytic region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec<T: Scalar> {
    pub theta: T,
    pub dim_class: DimClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionPart {
    R1,
    R2,
    None,
}

/// Membership verdict plus the satisfying subregion (R1 preferred on overlap).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub verdict: Verdict,
    pub which_part: RegionPart,
}

impl Membership {
    pub fn is_outside(&self) -> bool {
        self.verdict == Verdict::Outside
    }

    fn outside() -> Self {
        Membership {
            verdict: Verdict::Outside,
            which_part: RegionPart::None,
        }
    }
}

/// Coefficients of the quadratic feasibility polynomial F(α) = f₁α² + f₂α + f₃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoefficients<T: Scalar> {
    pub f1: T,
    pub f2: T,
    pub f3: T,
}

impl<T: Scalar> QuadraticCoefficients<T> {
    pub fn eval(&self, alpha: T) -> T {
        (self.f1 * alpha + self.f2) * alpha + self.f3
    }

    /// Symmetry axis α₀ = −f₂ / (2f₁).
    pub fn vertex(&self) -> T {
        -self.f2 / (self.f1 * T::two())
    }
}

/// Outcome of the α-feasibility check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaFeasibility<T: Scalar> {
    pub feasible: bool,
    pub alpha_witness: Option<T>,
}

fn check_theta<T: Scalar>(theta: T, include_right_angle: bool) -> Result<()> {
    let hi = T::half() * T::pi();
    let ok = theta > T::zero() && (theta < hi || (include_right_angle && theta <= hi + T::lit(1e-12)));
    if ok {
        Ok(())
    } else {
        Err(Error::ThetaOutOfRange {
            theta: theta.to_f64().unwrap_or(f64::NAN),
            range: if include_right_angle { "(0, π/2]" } else { "(0, π/2)" },
        })
    }
}

/// Classifies a margin vector: Interior if every slack clears +tol, Boundary
/// if the binding slack sits within ±tol, Outside otherwise. Margins are in
/// expression units, not Euclidean distance.
fn classify<T: Scalar>(slacks: &[T], tol: T) -> Verdict {
    let min = slacks.iter().copied().fold(T::infinity(), T::min);
    if min > tol {
        Verdict::Interior
    } else if min >= -tol {
        Verdict::Boundary
    } else {
        Verdict::Outside
    }
}

fn combine(r1: Verdict, r2: Verdict) -> Membership {
    // R1 preferred on overlap; Interior anywhere dominates Boundary.
    match (r1, r2) {
        (Verdict::Interior, _) => Membership {
            verdict: Verdict::Interior,
            which_part: RegionPart::R1,
        },
        (_, Verdict::Interior) => Membership {
            verdict: Verdict::Interior,
            which_part: RegionPart::R2,
        },
        (Verdict::Boundary, _) => Membership {
            verdict: Verdict::Boundary,
            which_part: RegionPart::R1,
        },
        (_, Verdict::Boundary) => Membership {
            verdict: Verdict::Boundary,
            which_part: RegionPart::R2,
        },
        _ => Membership::outside(),
    }
}

/// Slack of the tilted-ellipse constraint of the qubit R₂ region, as
/// 1 − (ellipse expression); degenerate axes at θ = π/4 and θ = π/2 collapse
/// to coordinate tests within `tol`.
fn ellipse_slack<T: Scalar>(p: &VariancePoint<T>, theta: T) -> T {
    let (x1, y1) = p.rotated();
    let cos4t = (theta * T::lit(4.0)).cos();
    let sixty_four = T::lit(64.0);
    let denom_x = T::one() + cos4t;
    let denom_y = T::one() - cos4t;
    let degenerate = T::lit(1e-12);
    let mut expr = T::zero();
    let mut slack = T::one();
    for (coord, denom) in [(x1, denom_x), (y1, denom_y)] {
        if denom <= degenerate {
            // Axis length zero: the coordinate itself must vanish, and a
            // degenerate ellipse has no interior, so the slack can never be
            // positive along this direction.
            slack = slack.min(-coord.abs());
        } else {
            expr = expr + sixty_four * coord * coord / denom;
        }
    }
    slack.min(T::one() - expr)
}

/// Membership of a variance point in the qubit region R₁⁽²⁾ ∪ R₂⁽²⁾.
pub fn qubit_membership<T: Scalar>(
    p: &VariancePoint<T>,
    theta: T,
    tol: T,
) -> Result<Membership> {
    check_theta(theta, true)?;
    let quarter = T::quarter();
    let cos2t = (theta * T::two()).cos();
    let threshold = (T::one() + cos2t * cos2t) * quarter;
    let sum = p.d_a + p.d_b;

    let r1 = classify(
        &[sum - threshold, quarter - p.d_a, quarter - p.d_b],
        tol,
    );
    let r2 = classify(
        &[threshold - sum, ellipse_slack(p, theta)],
        tol,
    );
    Ok(combine(r1, r2))
}

/// Slack of the ±-sign constraint of the d ≥ 3 region R₁, maximized over the sign
/// choice (union reading): the point satisfies the constraint if at least one
/// sign does.
fn pm_constraint_slack<T: Scalar>(s_a: T, s_b: T, theta: T) -> T {
    let cos2t = (theta * T::two()).cos();
    // −(±2cos2θ·s_A·s_B − 4(ΔA+ΔB) + (1+cos²2θ)) with 4Δ = 1 − s².
    let base = s_a * s_a + s_b * s_b + cos2t * cos2t - T::one();
    let cross = T::two() * cos2t * s_a * s_b;
    let worst_sign = (base + cross).min(base - cross);
    -worst_sign
}

fn sqrt_one_minus_4d<T: Scalar>(delta: T) -> Result<T> {
    let v = T::one() - T::lit(4.0) * delta;
    if v < T::zero() {
        if v < T::lit(-1e-12) {
            return Err(Error::invalid_parameter(format!(
                "variance {} exceeds 1/4",
                delta.to_f64().unwrap_or(f64::NAN)
            )));
        }
        return Ok(T::zero());
    }
    Ok(v.sqrt())
}

/// Membership of a variance point in the qudit region R₁⁽ᵈ⁾ ∪ R₂⁽ᵈ⁾ (d ≥ 3).
pub fn qudit_membership<T: Scalar>(
    p: &VariancePoint<T>,
    theta: T,
    tol: T,
) -> Result<Membership> {
    check_theta(theta, true)?;
    let s_a = sqrt_one_minus_4d(p.d_a)?;
    let s_b = sqrt_one_minus_4d(p.d_b)?;
    let g = T::two() - s_a - s_b;
    let gap = T::two() * theta.sin() * theta.sin();
    let quarter = T::quarter();

    let r1 = classify(
        &[
            g - gap,
            pm_constraint_slack(s_a, s_b, theta),
            quarter - p.d_a,
            quarter - p.d_b,
        ],
        tol,
    );
    let r2 = classify(&[g, gap - g, quarter - p.d_a, quarter - p.d_b], tol);
    Ok(combine(r1, r2))
}

/// Closed boundary polyline of the qubit region: the surviving ellipse arc
/// traced by equatorial Bloch states, joined with the ΔA = 1/4 and ΔB = 1/4
/// triangle edges.
pub fn qubit_boundary<T: Scalar>(theta: T, n: usize) -> Result<Vec<VariancePoint<T>>> {
    check_theta(theta, true)?;
    if n < 8 {
        return Err(Error::invalid_parameter("need at least 8 boundary points"));
    }
    let quarter = T::quarter();
    let cos2t = (theta * T::two()).cos();
    let corner = cos2t * cos2t * quarter; // threshold − 1/4

    // Equatorial states r = (sin φ, 0, cos φ) give (sin²φ/4, sin²(φ−2θ)/4);
    // the arc outside the triangle runs between the two triangle vertices.
    let (phi_start, phi_end) = {
        let half_pi = T::half() * T::pi();
        if theta <= T::quarter() * T::pi() {
            (half_pi + T::two() * theta, half_pi + T::pi())
        } else {
            (half_pi, half_pi + T::two() * theta)
        }
    };
    let mut points = Vec::with_capacity(n + 2 * (n / 4) + 1);
    for k in 0..n {
        let frac = T::lit(k as f64) / T::lit((n - 1) as f64);
        let phi = phi_start + (phi_end - phi_start) * frac;
        let d_a = phi.sin().powi(2) * quarter;
        let d_b = (phi - T::two() * theta).sin().powi(2) * quarter;
        points.push(VariancePoint::new(clamp_var(d_a), clamp_var(d_b))?);
    }
    // Right edge ΔA = 1/4 from (1/4, corner) up to (1/4, 1/4), then top edge
    // back to (corner, 1/4), closing the polyline.
    let edge_n = (n / 4).max(2);
    for k in 1..=edge_n {
        let frac = T::lit(k as f64) / T::lit(edge_n as f64);
        points.push(VariancePoint::new(
            quarter,
            corner + (quarter - corner) * frac,
        )?);
    }
    for k in 1..=edge_n {
        let frac = T::lit(k as f64) / T::lit(edge_n as f64);
        points.push(VariancePoint::new(
            quarter - (quarter - corner) * frac,
            quarter,
        )?);
    }
    Ok(points)
}

fn clamp_var<T: Scalar>(v: T) -> T {
    v.max(T::zero()).min(T::quarter())
}

/// Closed boundary polyline of the qudit region for θ ≤ π/4: the parabolic
/// arc replaces the lower-left ellipse nose; triangle edges close the loop.
/// For θ > π/4 the region is the full box and the box edge is returned.
pub fn qudit_boundary<T: Scalar>(theta: T, n: usize) -> Result<Vec<VariancePoint<T>>> {
    check_theta(theta, true)?;
    if n < 8 {
        return Err(Error::invalid_parameter("need at least 8 boundary points"));
    }
    let quarter = T::quarter();
    let quarter_pi = T::quarter() * T::pi();
    if theta > quarter_pi + T::lit(1e-12) {
        // Box-boundary fallback.
        let mut points = Vec::new();
        let per_side = n.max(8);
        let corners = [
            (T::zero(), T::zero()),
            (quarter, T::zero()),
            (quarter, quarter),
            (T::zero(), quarter),
        ];
        for side in 0..4 {
            let (x0, y0) = corners[side];
            let (x1, y1) = corners[(side + 1) % 4];
            for k in 0..per_side {
                let f = T::lit(k as f64) / T::lit(per_side as f64);
                points.push(VariancePoint::new(x0 + (x1 - x0) * f, y0 + (y1 - y0) * f)?);
            }
        }
        return Ok(points);
    }

    let half_pi = T::half() * T::pi();
    let cos2t = (theta * T::two()).cos();
    let corner = cos2t * cos2t * quarter;
    let k_sum = T::two() - T::two() * theta.sin() * theta.sin(); // √(1−4ΔA)+√(1−4ΔB) on the arc

    let mut points = Vec::new();
    // Ellipse arc from (corner, 1/4) down to the axis point (0, sin²2θ/4).
    let seg = (n / 3).max(4);
    for k in 0..=seg {
        // f sweeps φ from π/2+2θ to π (half of the full qubit arc).
        let f = T::lit(k as f64) / T::lit(seg as f64);
        let phi = half_pi + T::two() * theta + (T::pi() - (half_pi + T::two() * theta)) * f;
        let d_a = phi.sin().powi(2) * quarter;
        let d_b = (phi - T::two() * theta).sin().powi(2) * quarter;
        points.push(VariancePoint::new(clamp_var(d_a), clamp_var(d_b))?);
    }
    // Parabolic arc √(1−4ΔA) + √(1−4ΔB) = 2cos²θ between its axis endpoints.
    for k in 1..seg {
        let f = T::lit(k as f64) / T::lit(seg as f64);
        let s_a = T::one() - (T::one() - (k_sum - T::one())) * f;
        // s_a runs from 1 down to k_sum − 1.
        let s_b = k_sum - s_a;
        let d_a = (T::one() - s_a * s_a) * quarter;
        let d_b = (T::one() - s_b * s_b) * quarter;
        points.push(VariancePoint::new(clamp_var(d_a), clamp_var(d_b))?);
    }
    // Ellipse arc from (sin²2θ/4, 0) up to (1/4, corner).
    for k in 0..=seg {
        let f = T::lit(k as f64) / T::lit(seg as f64);
        let phi = T::pi() + T::two() * theta
            + ((half_pi + T::pi()) - (T::pi() + T::two() * theta)) * f;
        let d_a = phi.sin().powi(2) * quarter;
        let d_b = (phi - T::two() * theta).sin().powi(2) * quarter;
        points.push(VariancePoint::new(clamp_var(d_a), clamp_var(d_b))?);
    }
    // Triangle edges closing the loop.
    let edge_n = (n / 4).max(2);
    for k in 1..=edge_n {
        let f = T::lit(k as f64) / T::lit(edge_n as f64);
        points.push(VariancePoint::new(quarter, corner + (quarter - corner) * f)?);
    }
    for k in 1..=edge_n {
        let f = T::lit(k as f64) / T::lit(edge_n as f64);
        points.push(VariancePoint::new(quarter - (quarter - corner) * f, quarter)?);
    }
    Ok(points)
}

/// The quadratic F(α) for one sign combination of (r_z, r_x), built by exact
/// quadratic interpolation of r_x² + r_z² − α² at α ∈ {0, 1/2, 1}.
fn quadratic_for_signs<T: Scalar>(
    s_a: T,
    s_b: T,
    theta: T,
    sign_a: T,
    sign_b: T,
) -> QuadraticCoefficients<T> {
    let sin2t = (theta * T::two()).sin();
    let cos2t = (theta * T::two()).cos();
    let f_at = |alpha: T| -> T {
        let r_z = T::one() - alpha + sign_a * s_a;
        let r_x = ((T::one() - alpha - r_z * cos2t) + sign_b * s_b) / sin2t;
        r_x * r_x + r_z * r_z - alpha * alpha
    };
    let y0 = f_at(T::zero());
    let y1 = f_at(T::half());
    let y2 = f_at(T::one());
    // Quadratic through (0,y0), (1/2,y1), (1,y2).
    let f1 = T::two() * (y0 - T::two() * y1 + y2);
    let f2 = -y2 - T::lit(3.0) * y0 + T::lit(4.0) * y1;
    let f3 = y0;
    QuadraticCoefficients { f1, f2, f3 }
}

/// Closed-form coefficients for the (−, −) sign combination, kept as an
/// independent algebraic route for cross-checking `quadratic_for_signs`.
pub fn quadratic_coefficients_minus_minus<T: Scalar>(
    p: &VariancePoint<T>,
    theta: T,
) -> Result<QuadraticCoefficients<T>> {
    check_theta(theta, false)?;
    let s_a = sqrt_one_minus_4d(p.d_a)?;
    let s_b = sqrt_one_minus_4d(p.d_b)?;
    let sec2 = T::one() / theta.cos().powi(2);
    let sin2t = (theta * T::two()).sin();
    let cos2t = (theta * T::two()).cos();
    let f1 = theta.tan().powi(2);
    let f2 = sec2 * (s_a + s_b - T::two());
    let f3 = -(T::two() * cos2t * (s_a - T::one()) * (s_b - T::one())
        - (s_a - T::one()).powi(2)
        - (s_b - T::one()).powi(2))
        / (sin2t * sin2t);
    Ok(QuadraticCoefficients { f1, f2, f3 })
}

/// Decides whether some α ∈ [0, 1] admits a positive qudit block realizing
/// the variance point, over all four sign combinations of (r_z, r_x).
pub fn alpha_feasible<T: Scalar>(p: &VariancePoint<T>, theta: T) -> Result<AlphaFeasibility<T>> {
    let half_pi = T::half() * T::pi();
    if theta <= T::zero() || theta > half_pi + T::lit(1e-12) {
        return Err(Error::ThetaOutOfRange {
            theta: theta.to_f64().unwrap_or(f64::NAN),
            range: "(0, π/2]",
        });
    }
    let s_a = sqrt_one_minus_4d(p.d_a)?;
    let s_b = sqrt_one_minus_4d(p.d_b)?;

    if theta > half_pi - T::lit(1e-9) {
        // sin2θ → 0 limit: dividing F by f₁ leaves (α − (2−s_A−s_B)/2)² ≤ 0,
        // so the witness is α = g/2, always inside [0, 1].
        let alpha = (T::two() - s_a - s_b) * T::half();
        return Ok(AlphaFeasibility {
            feasible: true,
            alpha_witness: Some(alpha),
        });
    }

    let slack_tol = T::lit(1e-12);
    let mut best: Option<T> = None;
    for sign_a in [-T::one(), T::one()] {
        for sign_b in [-T::one(), T::one()] {
            let q = quadratic_for_signs(s_a, s_b, theta, sign_a, sign_b);
            // f1 = tan²θ > 0: upward parabola, so check its constrained min.
            let alpha0 = q.vertex();
            let candidate = alpha0.max(T::zero()).min(T::one());
            if q.eval(candidate) <= slack_tol {
                best = Some(candidate);
            }
        }
    }
    Ok(AlphaFeasibility {
        feasible: best.is_some(),
        alpha_witness: best,
    })
}

/// Affine variance rescaling mapping the projector region to the observable
/// region: ΔO = scale²·ΔP per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceTransform<T: Scalar> {
    pub scale_a_sq: T,
    pub scale_b_sq: T,
}

impl<T: Scalar> VarianceTransform<T> {
    pub fn identity() -> Self {
        Self {
            scale_a_sq: T::one(),
            scale_b_sq: T::one(),
        }
    }

    /// Maps a projector-region point to observable variances.
    pub fn apply(&self, p: &VariancePoint<T>) -> (T, T) {
        (p.d_a * self.scale_a_sq, p.d_b * self.scale_b_sq)
    }

    /// Maps observable variances back to projector-region coordinates.
    pub fn invert(&self, d_a: T, d_b: T) -> Result<VariancePoint<T>> {
        VariancePoint::new(d_a / self.scale_a_sq, d_b / self.scale_b_sq)
    }
}

/// Reduces a pair of observables to a region spec plus variance transform.
///
/// Qubit inputs may be arbitrary non-degenerate Hermitian operators; for
/// d ≥ 3 both must be rank-1 projectors (the analytic region assumes it).
/// An aligned pair (no 2×2 block) degenerates to θ = 0, reported as such;
/// membership operations reject it, matching the diagonal-segment region.
pub fn region_for_observables<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> Result<(RegionSpec<T>, VarianceTransform<T>)> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let d = a.dim();
    if d == 2 {
        let (pa, _, scale_a) = shift_scale_to_projector(a)?;
        let (pb, _, scale_b) = shift_scale_to_projector(b)?;
        let angles = principal_angles(&pa, &pb)?;
        let theta = angles.first().copied().unwrap_or_else(T::zero);
        Ok((
            RegionSpec {
                theta,
                dim_class: DimClass::Qubit,
            },
            VarianceTransform {
                scale_a_sq: scale_a * scale_a,
                scale_b_sq: scale_b * scale_b,
            },
        ))
    } else {
        let pa = Projector::new(a.clone())?;
        let pb = Projector::new(b.clone())?;
        if pa.rank() != 1 || pb.rank() != 1 {
            return Err(Error::OutOfAnalyticScope {
                reason: format!(
                    "analytic qudit region needs rank-1 projectors, got ranks {} and {}",
                    pa.rank(),
                    pb.rank()
                ),
            });
        }
        let angles = principal_angles(&pa, &pb)?;
        let theta = angles.first().copied().unwrap_or_else(T::zero);
        Ok((
            RegionSpec {
                theta,
                dim_class: DimClass::Qudit,
            },
            VarianceTransform::identity(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn vp(a: f64, b: f64) -> VariancePoint<f64> {
        VariancePoint::new(a, b).unwrap()
    }

    const TOL: f64 = DEFAULT_TOL;

    #[test]
    fn rotated_coords_preserve_radius() {
        let p = vp(0.2, 0.05);
        let (x1, y1) = p.rotated();
        let r2 = (0.2 - 0.125f64).powi(2) + (0.05 - 0.125f64).powi(2);
        assert!((x1 * x1 + y1 * y1 - r2).abs() < 1e-14);
    }

    #[test]
    fn qubit_center_point_is_interior_r1() {
        for theta in [PI / 12.0, FRAC_PI_6, FRAC_PI_4, PI / 3.0] {
            let m = qubit_membership(&vp(0.24, 0.24), theta, TOL).unwrap();
            assert_eq!(m.verdict, Verdict::Interior);
            assert_eq!(m.which_part, RegionPart::R1);
        }
        // The extreme corner sits on the box edge and classifies as boundary.
        let m = qubit_membership(&vp(0.25, 0.25), FRAC_PI_6, TOL).unwrap();
        assert_eq!(m.verdict, Verdict::Boundary);
        assert_eq!(m.which_part, RegionPart::R1);
    }

    #[test]
    fn qubit_origin_is_outside() {
        let m = qubit_membership(&vp(0.0, 0.0), FRAC_PI_6, TOL).unwrap();
        assert_eq!(m.verdict, Verdict::Outside);
    }

    #[test]
    fn qubit_eigenstate_point_is_boundary_r2() {
        // |0⟩ gives ΔA = 0, ΔB = cos²θ sin²θ = 3/16 at θ = π/6; exact-arithmetic
        // substitution into the ellipse form yields exactly 1.
        let theta = FRAC_PI_6;
        let d_b = theta.cos().powi(2) * theta.sin().powi(2);
        assert!((d_b - 3.0 / 16.0).abs() < 1e-15);
        let m = qubit_membership(&vp(0.0, d_b), theta, 1e-9).unwrap();
        assert_eq!(m.verdict, Verdict::Boundary);
        assert_eq!(m.which_part, RegionPart::R2);
    }

    #[test]
    fn qubit_degenerate_ellipse_at_quarter_pi() {
        // θ = π/4: ellipse collapses to the segment x₁ = 0 (ΔA + ΔB = 1/4).
        let m = qubit_membership(&vp(0.1, 0.15), FRAC_PI_4, TOL).unwrap();
        assert_eq!(m.verdict, Verdict::Boundary);
        let m = qubit_membership(&vp(0.1, 0.1), FRAC_PI_4, TOL).unwrap();
        assert_eq!(m.verdict, Verdict::Outside);
    }

    #[test]
    fn qubit_boundary_points_classify_boundary() {
        for theta in [PI / 12.0, FRAC_PI_6, FRAC_PI_4, PI / 3.0] {
            let pts = qubit_boundary(theta, 100).unwrap();
            for p in &pts {
                let m = qubit_membership(p, theta, 1e-8).unwrap();
                assert_eq!(
                    m.verdict,
                    Verdict::Boundary,
                    "theta={theta}, point=({}, {})",
                    p.d_a,
                    p.d_b
                );
            }
        }
    }

    #[test]
    fn qubit_boundary_degenerate_arc_at_quarter_pi() {
        let pts = qubit_boundary(FRAC_PI_4, 100).unwrap();
        // The arc portion satisfies ΔA + ΔB = 1/4 exactly.
        for p in pts.iter().take(100) {
            assert!((p.d_a + p.d_b - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn qubit_boundary_arc_endpoints() {
        let theta = FRAC_PI_6;
        let pts = qubit_boundary(theta, 64).unwrap();
        // Substitution oracle: φ = π/2+2θ and φ = 3π/2 are the triangle vertices.
        let first = pts.first().unwrap();
        assert!((first.d_a - (2.0 * theta).cos().powi(2) / 4.0).abs() < 1e-12);
        assert!((first.d_b - 0.25).abs() < 1e-12);
        // The φ = π point (0, sin²2θ/4) lies on the arc; the polyline is
        // discrete, so only require a sample within one parameter step.
        let target = (2.0 * theta).sin().powi(2) / 4.0;
        assert!(pts
            .iter()
            .any(|p| p.d_a < 1e-3 && (p.d_b - target).abs() < 1e-2));
    }

    #[test]
    fn qudit_origin_is_interior_r2() {
        for theta in [PI / 12.0, FRAC_PI_6, FRAC_PI_4, PI / 3.0] {
            let m = qudit_membership(&vp(0.0, 0.0), theta, TOL).unwrap();
            assert_ne!(m.verdict, Verdict::Outside, "theta={theta}");
            assert_eq!(m.which_part, RegionPart::R2);
        }
    }

    #[test]
    fn qudit_center_point_is_interior_r1() {
        for theta in [PI / 12.0, FRAC_PI_6, FRAC_PI_4, PI / 3.0] {
            let m = qudit_membership(&vp(0.24, 0.24), theta, TOL).unwrap();
            assert_eq!(m.verdict, Verdict::Interior, "theta={theta}");
            assert_eq!(m.which_part, RegionPart::R1);
        }
    }

    #[test]
    fn qudit_covers_whole_box_at_large_theta() {
        let theta = PI / 3.0;
        let n = 400;
        for i in 0..=n {
            for j in 0..=n {
                let p = vp(0.25 * i as f64 / n as f64, 0.25 * j as f64 / n as f64);
                let m = qudit_membership(&p, theta, TOL).unwrap();
                assert_ne!(m.verdict, Verdict::Outside, "({}, {})", p.d_a, p.d_b);
            }
        }
    }

    #[test]
    fn qudit_boundary_points_classify_boundary() {
        for theta in [PI / 12.0, FRAC_PI_6, FRAC_PI_4] {
            let pts = qudit_boundary(theta, 96).unwrap();
            for p in &pts {
                let m = qudit_membership(p, theta, 1e-7).unwrap();
                assert_eq!(
                    m.verdict,
                    Verdict::Boundary,
                    "theta={theta}, point=({:.17}, {:.17})",
                    p.d_a,
                    p.d_b
                );
            }
        }
    }

    #[test]
    fn qudit_parabola_axis_endpoint() {
        // Solving the arc equation at ΔA = 0 gives ΔB = sin²2θ/4, which equals
        // the φ = 0 ellipse endpoint from the qubit boundary.
        let theta = FRAC_PI_6;
        let k = 2.0 - 2.0 * theta.sin().powi(2);
        let s_b = k - 1.0;
        let d_b = (1.0 - s_b * s_b) / 4.0;
        assert!((d_b - (2.0 * theta).sin().powi(2) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn qudit_parabola_through_corner_at_quarter_pi() {
        // θ = π/4: the arc equation reads √(1−4ΔA) + √(1−4ΔB) = 1 and passes
        // through (1/4, 1/4) — substitution check.
        let k = 2.0 - 2.0 * FRAC_PI_4.sin().powi(2);
        assert!((k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn qudit_boundary_swap_symmetry() {
        let theta = FRAC_PI_6;
        let pts = qudit_boundary(theta, 64).unwrap();
        // The parabola arc is invariant under coordinate swap: for every arc
        // point, the swapped point also classifies Boundary.
        for p in &pts {
            let swapped = vp(p.d_b, p.d_a);
            let m = qudit_membership(&swapped, theta, 1e-7).unwrap();
            assert_eq!(m.verdict, Verdict::Boundary);
        }
    }

    #[test]
    fn alpha_feasible_examples() {
        let r = alpha_feasible(&vp(0.25, 0.25), FRAC_PI_6).unwrap();
        assert!(r.feasible);
        assert!((r.alpha_witness.unwrap() - 1.0).abs() < 1e-9);

        let r = alpha_feasible(&vp(0.0, 0.0), FRAC_PI_6).unwrap();
        assert!(r.feasible);
        assert!(r.alpha_witness.unwrap().abs() < 1e-9);
    }

    #[test]
    fn minus_minus_coefficients_match_interpolation() {
        for (da, db, theta) in [
            (0.1, 0.2, FRAC_PI_6),
            (0.03, 0.22, PI / 12.0),
            (0.24, 0.01, 1.1),
        ] {
            let p = vp(da, db);
            let supp = quadratic_coefficients_minus_minus(&p, theta).unwrap();
            let s_a = (1.0 - 4.0 * da).sqrt();
            let s_b = (1.0 - 4.0 * db).sqrt();
            let interp = quadratic_for_signs(s_a, s_b, theta, -1.0, -1.0);
            assert!((supp.f1 - interp.f1).abs() < 1e-10, "f1 at θ={theta}");
            assert!((supp.f2 - interp.f2).abs() < 1e-10, "f2 at θ={theta}");
            assert!((supp.f3 - interp.f3).abs() < 1e-9, "f3 at θ={theta}");
            assert!((supp.f1 - theta.tan().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_feasible_agrees_with_membership() {
        // Mutual-consistency oracle on a coarse grid away from the boundary.
        for theta in [PI / 12.0, FRAC_PI_6, FRAC_PI_4] {
            let n = 60;
            for i in 0..=n {
                for j in 0..=n {
                    let p = vp(0.25 * i as f64 / n as f64, 0.25 * j as f64 / n as f64);
                    let m = qudit_membership(&p, theta, 1e-6).unwrap();
                    if m.verdict == Verdict::Boundary {
                        continue;
                    }
                    let f = alpha_feasible(&p, theta).unwrap();
                    assert_eq!(
                        f.feasible,
                        m.verdict == Verdict::Interior,
                        "θ={theta}, p=({}, {})",
                        p.d_a,
                        p.d_b
                    );
                }
            }
        }
    }

    #[test]
    fn alpha_feasible_right_angle_limit() {
        let r = alpha_feasible(&vp(0.1, 0.1), FRAC_PI_2).unwrap();
        assert!(r.feasible);
        let a = r.alpha_witness.unwrap();
        let s = (1.0f64 - 0.4).sqrt();
        assert!((a - (2.0 - 2.0 * s) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn region_for_qubit_observables() {
        // σ_z vs σ_x: projectors at θ = π/4, scale 2 each → scale² = 4.
        let sz = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let sx = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let (spec, tf) = region_for_observables(&sz, &sx).unwrap();
        assert_eq!(spec.dim_class, DimClass::Qubit);
        assert!((spec.theta - FRAC_PI_4).abs() < 1e-9);
        assert!((tf.scale_a_sq - 4.0).abs() < 1e-9);
        assert!((tf.scale_b_sq - 4.0).abs() < 1e-9);
    }

    #[test]
    fn region_for_identical_projectors_degenerates() {
        let p = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let o = p.add(&ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        let (spec, _) = region_for_observables(&o, &o).unwrap();
        assert_eq!(spec.theta, 0.0);
        assert!(qubit_membership(&vp(0.1, 0.1), spec.theta, TOL).is_err());
    }

    #[test]
    fn region_for_qudit_rejects_higher_rank() {
        let d = 3;
        let mut m = ComplexMatrix::<f64>::zeros(d);
        m.set(0, 0, num_complex::Complex::new(1.0, 0.0));
        m.set(1, 1, num_complex::Complex::new(1.0, 0.0));
        let rank2 = m;
        let rank1 = ComplexMatrix::from_real(
            3,
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        assert!(matches!(
            region_for_observables(&rank2, &rank1),
            Err(Error::OutOfAnalyticScope { .. })
        ));
    }

    #[test]
    fn theta_out_of_range_rejected() {
        assert!(qubit_membership(&vp(0.1, 0.1), 0.0, TOL).is_err());
        assert!(qubit_membership(&vp(0.1, 0.1), 2.0, TOL).is_err());
        assert!(qudit_membership(&vp(0.1, 0.1), -0.5, TOL).is_err());
    }
}
