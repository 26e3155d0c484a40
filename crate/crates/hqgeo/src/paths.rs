//! Horizontal path construction: lifting curves from the horizontal
//! coordinate space, vertical displacement via commutator loops, and joining
//! arbitrary point pairs by piecewise horizontal paths.

use crate::curve::{CurveSample, SampledCurve};
use crate::error::{Error, Result};
use crate::frame::frame_vector;
use crate::group::Point;
use crate::quat::{Pure, Quaternion};

/// Junction tolerance for assembling multi-segment paths. The pieces are
/// produced by exact formulas, so junctions agree to roundoff; 1e-9 leaves
/// headroom for accumulated rounding on far-from-origin data.
const JUNCTION_TOL: f64 = 1e-9;

/// Vertical velocity of the horizontal lift over a base curve through
/// `alpha` with velocity `alpha_dot` (components ordered x1..x4). This is
/// the unique vertical rate that kills all three contact forms.
#[inline]
pub fn lift_rate(alpha: [f64; 4], alpha_dot: [f64; 4]) -> [f64; 3] {
    let [a1, a2, a3, a4] = alpha;
    let [d1, d2, d3, d4] = alpha_dot;
    [
        2.0 * (a2 * d1 - a1 * d2 + a4 * d3 - a3 * d4),
        2.0 * (a3 * d1 - a4 * d2 - a1 * d3 + a2 * d4),
        2.0 * (a4 * d1 + a3 * d2 - a2 * d3 - a1 * d4),
    ]
}

/// Horizontal lift of a curve in the horizontal coordinate space.
///
/// `base` maps lambda in [0, 1] to (alpha, alpha_dot); the lift starts at
/// `start`, whose horizontal part must equal alpha(0). The vertical part is
/// integrated per grid interval by Simpson's rule with a midpoint
/// evaluation, so the result is fourth-order accurate at every sample (and
/// exact when the integrand is a polynomial of degree <= 3 in lambda, as
/// happens for straight-line bases). Velocities are evaluated analytically
/// at the samples, not differenced.
pub fn horizontal_lift<F>(start: Point, base: F, n: usize) -> Result<SampledCurve>
where
    F: Fn(f64) -> ([f64; 4], [f64; 4]),
{
    let (alpha0, _) = base(0.0);
    let sq = start.q;
    let q0 = [sq.w, sq.x, sq.y, sq.z];
    for k in 0..4 {
        if (alpha0[k] - q0[k]).abs() > 1e-12 {
            return Err(Error::Input(format!(
                "lift base curve must start at the horizontal part of the start \
                 point (component {k}: {} vs {})",
                alpha0[k], q0[k]
            )));
        }
    }
    if n < 3 || n % 2 == 0 {
        return Err(Error::Input(format!(
            "sample count must be odd and >= 3, got {n}"
        )));
    }

    let h = 1.0 / (n as f64 - 1.0);
    let mut beta = [start.t.x, start.t.y, start.t.z];
    let mut samples = Vec::with_capacity(n);
    let sample_at = |lambda: f64, beta: [f64; 3]| {
        let (alpha, alpha_dot) = base(lambda);
        let rate = lift_rate(alpha, alpha_dot);
        CurveSample {
            lambda,
            point: Point::from_coords([
                alpha[0], alpha[1], alpha[2], alpha[3], beta[0], beta[1], beta[2],
            ]),
            velocity: [
                alpha_dot[0],
                alpha_dot[1],
                alpha_dot[2],
                alpha_dot[3],
                rate[0],
                rate[1],
                rate[2],
            ],
        }
    };
    samples.push(sample_at(0.0, beta));
    for i in 0..n - 1 {
        let l0 = i as f64 * h;
        let l1 = if i + 1 == n - 1 { 1.0 } else { l0 + h };
        let (a0, d0) = base(l0);
        let (am, dm) = base(0.5 * (l0 + l1));
        let (a1, d1) = base(l1);
        let r0 = lift_rate(a0, d0);
        let rm = lift_rate(am, dm);
        let r1 = lift_rate(a1, d1);
        for k in 0..3 {
            beta[k] += (l1 - l0) / 6.0 * (r0[k] + 4.0 * rm[k] + r1[k]);
        }
        samples.push(sample_at(l1, beta));
    }
    SampledCurve::from_segments(vec![samples], JUNCTION_TOL)
}

/// A purely vertical displacement realized as a closed horizontal loop in
/// the horizontal coordinates: eight straight segments along the frame
/// directions with coefficients (k1, k2, k3, k4, -k1, -k2, -k3, -k4).
///
/// Starting at the origin, that loop returns to horizontal position zero
/// and climbs to
///
/// ```text
/// t = -4 [ (k1 k2 + k3 k4) i + (k1 k3 - k2 k4) j + (k2 k3 + k1 k4) k ]
/// ```
#[derive(Debug, Clone, Copy)]
pub struct VerticalConnectorPlan {
    pub coeffs: [f64; 4],
}

impl VerticalConnectorPlan {
    /// Plan from explicit segment coefficients.
    pub fn from_coeffs(coeffs: [f64; 4]) -> Self {
        VerticalConnectorPlan { coeffs }
    }

    /// Vertical displacement the loop produces from the origin.
    pub fn target(&self) -> Pure {
        let [k1, k2, k3, k4] = self.coeffs;
        Pure::new(
            -4.0 * (k1 * k2 + k3 * k4),
            -4.0 * (k1 * k3 - k2 * k4),
            -4.0 * (k2 * k3 + k1 * k4),
        )
    }

    /// Total horizontal length of the loop.
    pub fn length(&self) -> f64 {
        2.0 * self.coeffs.iter().map(|k| k.abs()).sum::<f64>()
    }

    /// Solve for segment coefficients reaching a prescribed vertical target.
    ///
    /// Writing k = (r1 cos p1, r1 sin p1, r2 cos p2, r2 sin p2) and
    /// tau = -t/4, the constraints become r1 r2 = |tau_2 + i tau_3| =: big_r,
    /// p1 + p2 = arg(tau_2 + i tau_3) =: phi, and a quadratic in X = r1^2:
    ///
    /// ```text
    /// sin(2 p1) X^2 - 2 tau_1 X + big_r^2 sin(2 phi - 2 p1) = 0
    /// ```
    ///
    /// p1 is chosen from a fixed 720-point grid on [0, pi) by maximizing the
    /// discriminant among grid values admitting a positive root, which keeps
    /// the selection deterministic and avoids the degenerate linear cases.
    pub fn for_target(t: Pure) -> Result<VerticalConnectorPlan> {
        if !t.is_finite() {
            return Err(Error::Input("vertical target must be finite".into()));
        }
        let tau = Pure::new(-t.x / 4.0, -t.y / 4.0, -t.z / 4.0);
        if tau.norm() == 0.0 {
            return Ok(VerticalConnectorPlan::from_coeffs([0.0; 4]));
        }
        let big_r = (tau.y * tau.y + tau.z * tau.z).sqrt();
        if big_r == 0.0 {
            // Only the first vertical component: a single balanced pair.
            let r = tau.x.abs().sqrt();
            return Ok(VerticalConnectorPlan::from_coeffs([
                r,
                tau.x.signum() * r,
                0.0,
                0.0,
            ]));
        }
        let phi = tau.z.atan2(tau.y);

        // Degeneracy threshold for the quadratic's leading and linear
        // coefficients, relative to the natural scale of the data.
        let scale = tau.norm();
        let eps = 1e-9 * scale.max(1.0);

        let grid = 720;
        let mut best: Option<(f64, f64, f64)> = None; // (disc, p1, x_root)
        for g in 0..grid {
            let p1 = std::f64::consts::PI * g as f64 / grid as f64;
            let a = (2.0 * p1).sin();
            let b = -2.0 * tau.x;
            let c = big_r * big_r * (2.0 * phi - 2.0 * p1).sin();
            let disc = b * b - 4.0 * a * c;
            let x = if a.abs() < eps {
                if b.abs() < eps {
                    if c.abs() < eps * scale {
                        // 0 = 0: any radius works; pick the balanced one.
                        Some(big_r)
                    } else {
                        None
                    }
                } else {
                    let x = -c / b;
                    (x > 0.0).then_some(x)
                }
            } else if disc < 0.0 {
                None
            } else {
                let sq = disc.sqrt();
                let roots = [(-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)];
                // Prefer the root balancing the two radii (X nearest big_r).
                roots
                    .iter()
                    .copied()
                    .filter(|&x| x > 0.0)
                    .min_by(|p, q| {
                        (p - big_r)
                            .abs()
                            .partial_cmp(&(q - big_r).abs())
                            .unwrap()
                    })
            };
            if let Some(x) = x {
                let better = match best {
                    None => true,
                    Some((bd, _, _)) => disc > bd,
                };
                if better {
                    best = Some((disc, p1, x));
                }
            }
        }
        let (_, p1, x) = best.ok_or_else(|| {
            Error::NoConvergence(format!(
                "no loop coefficients found for vertical target ({}, {}, {})",
                t.x, t.y, t.z
            ))
        })?;
        let r1 = x.sqrt();
        let r2 = big_r / r1;
        let p2 = phi - p1;
        Ok(VerticalConnectorPlan::from_coeffs([
            r1 * p1.cos(),
            r1 * p1.sin(),
            r2 * p2.cos(),
            r2 * p2.sin(),
        ]))
    }

    /// Realize the loop as a sampled horizontal curve from the origin.
    /// Each of the eight segments is a straight coordinate line (the frame
    /// coefficient driving the vertical drift is constant along its own
    /// flow), so samples and velocities are exact.
    pub fn curve(&self, samples_per_segment: usize) -> Result<SampledCurve> {
        if samples_per_segment < 3 || samples_per_segment % 2 == 0 {
            return Err(Error::Input(format!(
                "samples per segment must be odd and >= 3, got {samples_per_segment}"
            )));
        }
        let steps: [(usize, f64); 8] = [
            (0, self.coeffs[0]),
            (1, self.coeffs[1]),
            (2, self.coeffs[2]),
            (3, self.coeffs[3]),
            (0, -self.coeffs[0]),
            (1, -self.coeffs[1]),
            (2, -self.coeffs[2]),
            (3, -self.coeffs[3]),
        ];
        let mut segments = Vec::with_capacity(8);
        let mut at = Point::ORIGIN;
        for (seg, &(dir, c)) in steps.iter().enumerate() {
            let start = at.coords();
            // Flowing along frame direction `dir` from `at` for time c lands
            // at the group product with (c e_dir, 0).
            let mut unit = Quaternion::ZERO;
            match dir {
                0 => unit.w = c,
                1 => unit.x = c,
                2 => unit.y = c,
                _ => unit.z = c,
            }
            let end_point = at.compose(Point::new(unit, Pure::ZERO));
            let end = end_point.coords();
            let mut seg_samples = Vec::with_capacity(samples_per_segment);
            for i in 0..samples_per_segment {
                let s = i as f64 / (samples_per_segment as f64 - 1.0);
                let lambda = (seg as f64 + s) / 8.0;
                let mut coords = [0.0; 7];
                for k in 0..7 {
                    coords[k] = start[k] + s * (end[k] - start[k]);
                }
                let point = Point::from_coords(coords);
                let fv = frame_vector(point, dir);
                let mut velocity = [0.0; 7];
                for k in 0..7 {
                    velocity[k] = 8.0 * c * fv[k];
                }
                seg_samples.push(CurveSample {
                    lambda,
                    point,
                    velocity,
                });
            }
            // Pin the global parameter exactly at the outer ends.
            if seg == 7 {
                seg_samples.last_mut().unwrap().lambda = 1.0;
            }
            segments.push(seg_samples);
            at = end_point;
        }
        SampledCurve::from_segments(segments, JUNCTION_TOL)
    }
}

/// Join `from` to `to` by a horizontal path: a straight-line lift in the
/// horizontal coordinates followed by a vertical connector loop closing the
/// remaining vertical gap. Both halves are exact constructions, so the
/// endpoint matches `to` to roundoff.
pub fn connect(from: Point, to: Point, samples_per_segment: usize) -> Result<SampledCurve> {
    if !from.is_finite() || !to.is_finite() {
        return Err(Error::Input("connect endpoints must be finite".into()));
    }
    if samples_per_segment < 3 || samples_per_segment % 2 == 0 {
        return Err(Error::Input(format!(
            "samples per segment must be odd and >= 3, got {samples_per_segment}"
        )));
    }
    if from.coords() == to.coords() {
        // Degenerate case: the constant curve.
        return SampledCurve::sample_uniform(samples_per_segment, |_| (from, [0.0; 7]));
    }

    let qf = from.q;
    let qt = to.q;
    let lift = horizontal_lift(
        from,
        |l| {
            (
                [
                    qf.w + l * (qt.w - qf.w),
                    qf.x + l * (qt.x - qf.x),
                    qf.y + l * (qt.y - qf.y),
                    qf.z + l * (qt.z - qf.z),
                ],
                [qt.w - qf.w, qt.x - qf.x, qt.y - qf.y, qt.z - qf.z],
            )
        },
        samples_per_segment,
    )?;

    // The lift lands at (q_to, beta); the loop must close the vertical gap
    // seen from `to`, i.e. translate a loop for t_gap = t_reached - t_to.
    let reached = lift.endpoint();
    let gap = reached.t - to.t;
    let plan = VerticalConnectorPlan::for_target(gap)?;
    // The translated loop runs to -> reached; reversed it runs reached -> to.
    let closing = plan.curve(samples_per_segment)?.translate(to).reverse();
    lift.concat(&closing, JUNCTION_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lift_of_unit_circle_lands_at_known_vertical_point() {
        // Base circle of circumference 1 in the (x1, x2) plane. Its lift is
        // the classic closed-horizontal-projection curve with endpoint
        // (0, -(1/pi) i).
        let lift = horizontal_lift(
            Point::ORIGIN,
            |l| {
                let u = 2.0 * PI * l;
                (
                    [u.sin() / (2.0 * PI), (1.0 - u.cos()) / (2.0 * PI), 0.0, 0.0],
                    [u.cos(), u.sin(), 0.0, 0.0],
                )
            },
            513,
        )
        .unwrap();
        lift.validate().unwrap();
        assert!(lift.max_theta_residual() < 1e-12);
        let end = lift.endpoint();
        assert!(end.q.norm() < 1e-12);
        assert!((end.t.x - (-1.0 / PI)).abs() < 1e-10);
        assert!(end.t.y.abs() < 1e-12);
        assert!(end.t.z.abs() < 1e-12);
        assert!((lift.length_cc() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lift_rejects_mismatched_start() {
        let bad = horizontal_lift(
            Point::from_coords([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            |l| ([l, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]),
            65,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn connector_target_formula_matches_sampled_endpoint() {
        let plan = VerticalConnectorPlan::from_coeffs([0.7, -0.3, 1.1, 0.4]);
        let curve = plan.curve(65).unwrap();
        curve.validate().unwrap();
        assert!(curve.max_theta_residual() < 1e-12);
        let end = curve.endpoint();
        assert!(end.q.norm() < 1e-12);
        let t = plan.target();
        assert!((end.t - t).norm() < 1e-12);
        assert!((curve.length_cc() - plan.length()).abs() < 1e-12);
    }

    #[test]
    fn connector_solver_reaches_prescribed_targets() {
        let targets = [
            Pure::new(-4.0, 0.0, 0.0),
            Pure::new(0.0, -4.0, 0.0),
            Pure::new(0.0, 0.0, -4.0),
            Pure::new(1.0, 2.0, 3.0),
            Pure::new(-0.3, 0.001, 5.0),
            Pure::ZERO,
        ];
        for t in targets {
            let plan = VerticalConnectorPlan::for_target(t).unwrap();
            assert!(
                (plan.target() - t).norm() < 1e-9 * (1.0 + t.norm()),
                "target {:?} reached {:?}",
                t,
                plan.target()
            );
        }
    }

    #[test]
    fn connector_solver_balanced_example() {
        // Target -4j: tau = (0, 1, 0), solved at p1 = pi/4 with all radii 1.
        let plan = VerticalConnectorPlan::for_target(Pure::new(0.0, -4.0, 0.0)).unwrap();
        let s = 0.5f64.sqrt();
        let expect = [s, s, s, -s];
        for k in 0..4 {
            assert!(
                (plan.coeffs[k] - expect[k]).abs() < 1e-9,
                "coefficient {k}: {} vs {}",
                plan.coeffs[k],
                expect[k]
            );
        }
    }

    #[test]
    fn connect_joins_arbitrary_points_exactly() {
        let from = Point::from_coords([0.3, -0.8, 0.2, 1.1, 0.5, -0.2, 0.9]);
        let to = Point::from_coords([-1.0, 0.4, 0.7, -0.3, 2.0, 1.5, -0.6]);
        let path = connect(from, to, 257).unwrap();
        path.validate().unwrap();
        assert_eq!(path.start().coords(), from.coords());
        let end = path.endpoint();
        let err = end
            .coords()
            .iter()
            .zip(to.coords().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "endpoint error {err}");
        assert!(path.max_theta_residual() < 1e-10);
    }

    #[test]
    fn connect_horizontal_target_is_a_straight_segment() {
        let to = Point::from_coords([1.0, 2.0, -0.5, 0.25, 0.0, 0.0, 0.0]);
        let path = connect(Point::ORIGIN, to, 257).unwrap();
        let qn = to.q.norm();
        assert!((path.length_cc() - qn).abs() < 1e-12);
    }

    #[test]
    fn connect_same_point_is_constant() {
        let p = Point::from_coords([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7]);
        let path = connect(p, p, 65).unwrap();
        path.validate().unwrap();
        assert_eq!(path.length_cc(), 0.0);
        assert_eq!(path.endpoint().coords(), p.coords());
    }
}
