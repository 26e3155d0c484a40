//! The Carnot-Caratheodory metric: unit-speed geodesics from the origin,
//! sphere sampling, the origin distance via a scalar profile equation, and
//! the comparison with the gauge distance.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::group::Point;
use crate::numeric::{
    bisect, cos_sin_ratio, one_minus_cos, one_minus_cos_over_x2, sinc, x_cot_x, x_minus_sin,
    x_minus_sin_over_x3,
};
use crate::quat::{Pure, Quaternion};
use crate::Mode;

use std::f64::consts::TAU;

/// A unit-speed geodesic of the horizontal metric from the origin. `a` is
/// the rotation quaternion of the horizontal velocity (a = 0 is the
/// straight-line branch), `b` the initial velocity with |b| = 1.
#[derive(Debug, Clone, Copy)]
pub struct CcGeodesic {
    a: Pure,
    b: Quaternion,
}

impl CcGeodesic {
    pub fn new(a: Pure, b: Quaternion) -> Result<CcGeodesic> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Input("geodesic data must be finite".into()));
        }
        if (b.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Input(format!(
                "initial velocity must be a unit quaternion (|b| = {})",
                b.norm()
            )));
        }
        Ok(CcGeodesic { a, b })
    }

    pub fn a(&self) -> Pure {
        self.a
    }

    pub fn b(&self) -> Quaternion {
        self.b
    }

    /// Position and velocity at arclength `lambda`:
    ///
    /// ```text
    /// alpha(lambda) = lambda sinc(x) b + lambda^2 (1-cos x)/x^2 (a b)
    /// beta(lambda)  = -kappa lambda^3 (x - sin x)/x^3 a,   x = |a| lambda
    /// ```
    ///
    /// with kappa = 2 in [`Mode::Corrected`] (the value forced by
    /// horizontality) and kappa = 4 in [`Mode::AsPublished`].
    pub fn eval(&self, lambda: f64, mode: Mode) -> (Point, [f64; 7]) {
        let kappa = mode.kappa();
        let omega = self.a.norm();
        let x = omega * lambda;
        let aq = self.a.as_quaternion();
        let ab = aq * self.b;
        let s1 = sinc(x);
        let v2 = one_minus_cos_over_x2(x);
        let f3 = x_minus_sin_over_x3(x);

        let alpha = self.b.scale(lambda * s1) + ab.scale(lambda * lambda * v2);
        let alpha_dot = self.b.scale(x.cos()) + ab.scale(lambda * s1);
        let beta = self.a.scale(-kappa * lambda.powi(3) * f3);
        let beta_dot = self.a.scale(-kappa * lambda * lambda * v2);

        (
            Point::new(alpha, beta),
            [
                alpha_dot.w,
                alpha_dot.x,
                alpha_dot.y,
                alpha_dot.z,
                beta_dot.x,
                beta_dot.y,
                beta_dot.z,
            ],
        )
    }

    /// Sample the arc from the origin up to arclength `radius` on `n`
    /// points, reparametrized over [0, 1].
    pub fn curve(&self, radius: f64, n: usize, mode: Mode) -> Result<SampledCurve> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Input(format!("arc length must be positive, got {radius}")));
        }
        SampledCurve::sample_uniform(n, |l| {
            let (p, v) = self.eval(l * radius, mode);
            let mut scaled = v;
            for c in scaled.iter_mut() {
                *c *= radius;
            }
            (p, scaled)
        })
    }
}

/// Solve the profile equation (1 - cos x)/(x - sin x) = `ratio` for
/// x in [0, 2*pi); in [`Mode::AsPublished`] the left side carries an extra
/// 1/2. The left side decreases strictly from +inf to 0, so the root is
/// unique; ratio = 0 returns the limit value 2*pi.
pub fn x0_solve(ratio: f64, mode: Mode) -> Result<f64> {
    if !(ratio >= 0.0) {
        return Err(Error::Domain(format!(
            "profile ratio must be nonnegative, got {ratio}"
        )));
    }
    let scale = match mode {
        Mode::Corrected => 1.0,
        Mode::AsPublished => 0.5,
    };
    if ratio == 0.0 {
        return Ok(TAU);
    }
    if ratio.is_infinite() {
        return Ok(0.0);
    }
    // The profile value at the representable end of the interval: anything
    // below it is indistinguishable from the limit x0 = 2*pi.
    let end = TAU;
    if ratio <= scale * cos_sin_ratio(end) {
        return Ok(end);
    }
    bisect(|x| scale * cos_sin_ratio(x) - ratio, f64::MIN_POSITIVE, end)
}

/// d_cc / d_gauge as a function of the profile root x0:
/// (x0^4 / (4 (1-cos x0)^2 + kappa^2 (x0 - sin x0)^2))^(1/4).
/// Tends to 1 as x0 -> 0 (kappa = 2) and reaches sqrt(pi) at x0 = 2*pi.
pub fn arc_ratio(x0: f64, mode: Mode) -> f64 {
    let kappa = mode.kappa();
    if x0 < 1e-4 {
        // Leading series of the quartic ratio, exact to f64 here.
        return 1.0 - (kappa * kappa - 6.0) * x0 * x0 / 144.0;
    }
    let c = one_minus_cos(x0);
    let f = x_minus_sin(x0);
    (x0.powi(4) / (4.0 * c * c + kappa * kappa * f * f)).powf(0.25)
}

/// Carnot-Caratheodory distance from the origin.
pub fn cc_distance_origin(p: Point, mode: Mode) -> f64 {
    let qn = p.q.norm();
    let tn = p.t.norm();
    if tn == 0.0 {
        // Purely horizontal targets are reached by straight lines.
        return qn;
    }
    let x0 = match x0_solve(qn * qn / tn, mode) {
        Ok(x0) => x0,
        // Unreachable: the ratio is finite and nonnegative here.
        Err(_) => return f64::NAN,
    };
    arc_ratio(x0, mode) * p.gauge()
}

/// Carnot-Caratheodory distance between two points, via left-invariance.
pub fn cc_distance(a: Point, b: Point, mode: Mode) -> f64 {
    cc_distance_origin(a.inverse().compose(b), mode)
}

/// The ratio d_cc(O, p) / d_gauge(O, p). Lies in [1, sqrt(pi)]: 1 exactly
/// on the horizontal slice, sqrt(pi) on the vertical axis.
pub fn comparison_ratio(p: Point, mode: Mode) -> Result<f64> {
    let qn = p.q.norm();
    let tn = p.t.norm();
    if qn == 0.0 && tn == 0.0 {
        return Err(Error::Domain(
            "comparison ratio is undefined at the origin".into(),
        ));
    }
    if tn == 0.0 {
        return Ok(1.0);
    }
    Ok(arc_ratio(x0_solve(qn * qn / tn, mode)?, mode))
}

/// Geodesic data reaching a target from the origin: the geodesic, its
/// arclength (the distance), and the unit-norm diagnostic of the recovered
/// initial velocity (|b| - 1 before normalization).
#[derive(Debug, Clone, Copy)]
pub struct CcBvpSolution {
    pub geodesic: CcGeodesic,
    pub radius: f64,
    pub unit_defect: f64,
}

/// Solve the geodesic boundary-value problem from the origin on the first
/// arc. For a vertical target the horizontal direction is underdetermined;
/// the real axis is chosen canonically.
pub fn solve_cc_bvp(target: Point, mode: Mode) -> Result<CcBvpSolution> {
    if !target.is_finite() {
        return Err(Error::Input("target must be finite".into()));
    }
    let qn = target.q.norm();
    let tn = target.t.norm();
    if qn == 0.0 && tn == 0.0 {
        return Err(Error::Input(
            "boundary-value target must differ from the origin".into(),
        ));
    }
    if tn == 0.0 {
        return Ok(CcBvpSolution {
            geodesic: CcGeodesic::new(Pure::ZERO, target.q.scale(1.0 / qn))?,
            radius: qn,
            unit_defect: 0.0,
        });
    }
    let radius = cc_distance_origin(target, mode);
    let that = target.t.scale(1.0 / tn);
    if qn == 0.0 {
        let a = that.scale(-TAU / radius);
        return Ok(CcBvpSolution {
            geodesic: CcGeodesic::new(a, Quaternion::ONE)?,
            radius,
            unit_defect: 0.0,
        });
    }
    let x0 = x0_solve(qn * qn / tn, mode)?;
    let omega = x0 / radius;
    let a = that.scale(-omega);
    // b = ((x0/2) cot(x0/2) q - (a q) radius / 2) / radius, unit by
    // construction; the defect measures accumulated rounding.
    let b_raw = target.q.scale(x_cot_x(0.5 * x0) / radius)
        - (a.as_quaternion() * target.q).scale(0.5);
    let unit_defect = b_raw.norm() - 1.0;
    let b = b_raw.scale(1.0 / b_raw.norm());
    Ok(CcBvpSolution {
        geodesic: CcGeodesic::new(a, b)?,
        radius,
        unit_defect,
    })
}

/// Draw `n` points of the sphere of radius `radius`: arc parameter x0
/// uniform on [0, 2*pi], rotation axis uniform on the 2-sphere, initial
/// velocity uniform on the unit quaternions. Deterministic for a fixed
/// seed.
pub fn cc_sphere_sample(radius: f64, n: usize, seed: u64, mode: Mode) -> Result<Vec<Point>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Input(format!(
            "sphere radius must be positive, got {radius}"
        )));
    }
    if n == 0 {
        return Err(Error::Input("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x0: f64 = rng.gen_range(0.0..TAU);
        let axis = random_unit3(&mut rng);
        let b = random_unit4(&mut rng);
        let a = axis.scale(x0 / radius);
        let geo = CcGeodesic::new(a, b)?;
        out.push(geo.eval(radius, mode).0);
    }
    Ok(out)
}

fn normal_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    // Box-Muller transform of two uniforms.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    (r * u2.cos(), r * u2.sin())
}

fn random_unit3<R: Rng>(rng: &mut R) -> Pure {
    loop {
        let (x, y) = normal_pair(rng);
        let (z, _) = normal_pair(rng);
        let v = Pure::new(x, y, z);
        let n = v.norm();
        if n > 1e-6 {
            return v.scale(1.0 / n);
        }
    }
}

fn random_unit4<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let (w, x) = normal_pair(rng);
        let (y, z) = normal_pair(rng);
        let v = Quaternion::new(w, x, y, z);
        let n = v.norm();
        if n > 1e-6 {
            return v.scale(1.0 / n);
        }
    }
}
