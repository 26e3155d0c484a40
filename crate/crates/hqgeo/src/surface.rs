//! Hypersurfaces given by a defining function and their horizontal mean
//! curvature.
//!
//! The curvature of `{u = 0}` is the horizontal divergence of the
//! horizontal unit normal,
//!
//! ```text
//! H0 = sum_i xi_i(a_i / A),   a_i = xi_i u,   A = |a|,
//! ```
//!
//! which expands to `trace(M)/A - (a^T M a)/A^3` with `M_ij = xi_i xi_j u`.
//! The mixed frame derivatives reduce to Euclidean data: with gradient `g`
//! and Hessian `H` of `u`,
//!
//! ```text
//! M_ij = X_i(p)^T H X_j(p) + sum_a g_t[a] P_a(e_i)[j],
//! ```
//!
//! where `X_i(p)` is the i-th frame vector and `P_a(e_i)[j]` the twist
//! matrix evaluated on the i-th horizontal unit vector (the frame
//! coefficients are linear in x, so their directional derivatives are the
//! matrix at the direction). The value is independent of the choice of
//! defining function for the same oriented surface.
//!
//! Rotationally invariant surfaces `|t| = f(|q|)` are also supported
//! through their radial profile, which yields the closed form
//!
//! ```text
//! H0 = [-4r(2f' + r f'') - 3 f'^3 / r] / (4r^2 + f'^2)^(3/2)
//!      + 8 r^2 / (f sqrt(4r^2 + f'^2)),
//! ```
//!
//! used as an independent cross-check of the implicit machinery.

use crate::error::{Error, Result};
use crate::frame::{frame_vectors, twist_matrix};
use crate::group::Point;
use crate::numeric::{bisect, one_minus_cos, sinc, x_minus_sin};
use crate::quat::{Pure, Quaternion};
use crate::riemannian::MetricParams;

use std::f64::consts::TAU;

/// A point is treated as characteristic when the horizontal gradient norm
/// falls below this. Absolute threshold: defining functions are expected to
/// be scaled so surface gradients are O(1).
pub const CHARACTERISTIC_TOL: f64 = 1e-8;

/// Euclidean 2-jet of a defining function at a point, in the coordinate
/// order `[x1, x2, x3, x4, t1, t2, t3]`.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    pub value: f64,
    pub gradient: [f64; 7],
    pub hessian: [[f64; 7]; 7],
}

enum JetSource {
    Analytic(Box<dyn Fn(Point) -> Jet + Send + Sync>),
    /// Value-only field; derivatives by central differences.
    FiniteDifference(Box<dyn Fn(Point) -> f64 + Send + Sync>),
}

/// A hypersurface `{u = 0}` described by its defining function. Analytic
/// jets are used when available; otherwise derivatives fall back to central
/// finite differences (step 1e-5 for the gradient, 1e-4 for the Hessian,
/// both scaled by coordinate magnitude).
pub struct ImplicitSurface {
    name: String,
    source: JetSource,
}

/// Names accepted by [`ImplicitSurface::catalog`].
pub const CATALOG: [&str; 5] = [
    "hyperplane-x1",
    "paraboloid-sqrt43",
    "euclidean-sphere",
    "koranyi-sphere",
    "cc-sphere",
];

impl ImplicitSurface {
    /// Surface from a value-only defining function; derivatives by finite
    /// differences.
    pub fn from_fn<F>(name: &str, f: F) -> ImplicitSurface
    where
        F: Fn(Point) -> f64 + Send + Sync + 'static,
    {
        ImplicitSurface {
            name: name.to_string(),
            source: JetSource::FiniteDifference(Box::new(f)),
        }
    }

    /// Surface with an analytic jet.
    pub fn with_jet<F>(name: &str, jet: F) -> ImplicitSurface
    where
        F: Fn(Point) -> Jet + Send + Sync + 'static,
    {
        ImplicitSurface {
            name: name.to_string(),
            source: JetSource::Analytic(Box::new(jet)),
        }
    }

    /// Built-in surfaces. `radius` is the defining scale of the three
    /// spheres; the hyperplane and the paraboloid ignore it.
    ///
    /// - `hyperplane-x1`: `x1 = 0`
    /// - `paraboloid-sqrt43`: `|t|^2 = (4/3) |q|^4` (a minimal surface)
    /// - `euclidean-sphere`: `|q|^2 + |t|^2 = R^2`
    /// - `koranyi-sphere`: `|q|^4 + |t|^2 = R^4` (the gauge sphere)
    /// - `cc-sphere`: the geodesic sphere of the horizontal metric
    pub fn catalog(name: &str, radius: f64) -> Result<ImplicitSurface> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Input(format!(
                "surface radius must be positive, got {radius}"
            )));
        }
        match name {
            "hyperplane-x1" => Ok(Self::with_jet(name, |p| Jet {
                value: p.q.w,
                gradient: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                hessian: [[0.0; 7]; 7],
            })),
            "paraboloid-sqrt43" => Ok(Self::with_jet(name, |p| {
                let x = [p.q.w, p.q.x, p.q.y, p.q.z];
                let t = [p.t.x, p.t.y, p.t.z];
                let r2 = x.iter().map(|v| v * v).sum::<f64>();
                let mut gradient = [0.0; 7];
                let mut hessian = [[0.0; 7]; 7];
                for m in 0..4 {
                    gradient[m] = -(16.0 / 3.0) * r2 * x[m];
                    for n in 0..4 {
                        hessian[m][n] = -(32.0 / 3.0) * x[m] * x[n];
                    }
                    hessian[m][m] -= (16.0 / 3.0) * r2;
                }
                for a in 0..3 {
                    gradient[4 + a] = 2.0 * t[a];
                    hessian[4 + a][4 + a] = 2.0;
                }
                Jet {
                    value: t.iter().map(|v| v * v).sum::<f64>() - (4.0 / 3.0) * r2 * r2,
                    gradient,
                    hessian,
                }
            })),
            "euclidean-sphere" => Ok(Self::with_jet(name, move |p| {
                let c = p.coords();
                let mut gradient = [0.0; 7];
                let mut hessian = [[0.0; 7]; 7];
                for m in 0..7 {
                    gradient[m] = 2.0 * c[m];
                    hessian[m][m] = 2.0;
                }
                Jet {
                    value: c.iter().map(|v| v * v).sum::<f64>() - radius * radius,
                    gradient,
                    hessian,
                }
            })),
            "koranyi-sphere" => Ok(Self::with_jet(name, move |p| {
                let x = [p.q.w, p.q.x, p.q.y, p.q.z];
                let t = [p.t.x, p.t.y, p.t.z];
                let r2 = x.iter().map(|v| v * v).sum::<f64>();
                let mut gradient = [0.0; 7];
                let mut hessian = [[0.0; 7]; 7];
                for m in 0..4 {
                    gradient[m] = 4.0 * r2 * x[m];
                    for n in 0..4 {
                        hessian[m][n] = 8.0 * x[m] * x[n];
                    }
                    hessian[m][m] += 4.0 * r2;
                }
                for a in 0..3 {
                    gradient[4 + a] = 2.0 * t[a];
                    hessian[4 + a][4 + a] = 2.0;
                }
                Jet {
                    value: r2 * r2 + t.iter().map(|v| v * v).sum::<f64>()
                        - radius.powi(4),
                    gradient,
                    hessian,
                }
            })),
            "cc-sphere" => Ok(profile_surface(name, CcSphereProfile::new(radius)?)),
            other => Err(Error::Input(format!(
                "unknown surface '{other}' (expected one of {CATALOG:?})"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, p: Point) -> f64 {
        match &self.source {
            JetSource::Analytic(jet) => jet(p).value,
            JetSource::FiniteDifference(f) => f(p),
        }
    }

    pub fn jet(&self, p: Point) -> Jet {
        match &self.source {
            JetSource::Analytic(jet) => jet(p),
            JetSource::FiniteDifference(f) => fd_jet(f.as_ref(), p),
        }
    }

    /// Frame derivatives `(xi_1 u, ..., xi_4 u)`.
    pub fn horizontal_gradient(&self, p: Point) -> [f64; 4] {
        horizontal_gradient_of(&self.jet(p), p)
    }

    /// Norm of the horizontal gradient.
    pub fn horizontal_norm(&self, p: Point) -> f64 {
        let a = self.horizontal_gradient(p);
        (a.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// Whether the horizontal gradient degenerates at `p`.
    pub fn is_characteristic(&self, p: Point) -> bool {
        self.horizontal_norm(p) <= CHARACTERISTIC_TOL
    }

    /// Horizontal unit normal (frame coefficients), erring at
    /// characteristic points.
    pub fn horizontal_normal(&self, p: Point) -> Result<[f64; 4]> {
        let a = self.horizontal_gradient(p);
        let norm = (a.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if norm <= CHARACTERISTIC_TOL {
            return Err(Error::CharacteristicPoint {
                norm,
                tol: CHARACTERISTIC_TOL,
            });
        }
        Ok([a[0] / norm, a[1] / norm, a[2] / norm, a[3] / norm])
    }

    /// Unit normal of the Riemannian extension metric, as frame
    /// coefficients `(horizontal, vertical)`: the vertical entries are
    /// `(1/L_a) du/dt_a` before normalization.
    pub fn full_normal(
        &self,
        p: Point,
        params: &MetricParams,
    ) -> Result<([f64; 4], [f64; 3])> {
        let jet = self.jet(p);
        let a = horizontal_gradient_of(&jet, p);
        let l = params.l();
        let b = [
            jet.gradient[4] / l[0],
            jet.gradient[5] / l[1],
            jet.gradient[6] / l[2],
        ];
        let norm = (a.iter().map(|v| v * v).sum::<f64>()
            + b.iter().map(|v| v * v).sum::<f64>())
        .sqrt();
        if norm <= CHARACTERISTIC_TOL {
            return Err(Error::Domain(format!(
                "gradient norm {norm} too small to normalize"
            )));
        }
        Ok((
            [a[0] / norm, a[1] / norm, a[2] / norm, a[3] / norm],
            [b[0] / norm, b[1] / norm, b[2] / norm],
        ))
    }

    /// Horizontal mean curvature at `p` (the horizontal divergence of the
    /// horizontal unit normal). Errs at characteristic points, where the
    /// normal is undefined.
    pub fn horizontal_mean_curvature(&self, p: Point) -> Result<f64> {
        let jet = self.jet(p);
        if !jet.gradient.iter().all(|v| v.is_finite())
            || !jet.hessian.iter().flatten().all(|v| v.is_finite())
        {
            return Err(Error::Domain(
                "defining function jet is not finite here".into(),
            ));
        }
        let a = horizontal_gradient_of(&jet, p);
        let norm = (a.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if norm <= CHARACTERISTIC_TOL {
            return Err(Error::CharacteristicPoint {
                norm,
                tol: CHARACTERISTIC_TOL,
            });
        }
        let frame = frame_vectors(p);
        let units = [
            twist_matrix([1.0, 0.0, 0.0, 0.0]),
            twist_matrix([0.0, 1.0, 0.0, 0.0]),
            twist_matrix([0.0, 0.0, 1.0, 0.0]),
            twist_matrix([0.0, 0.0, 0.0, 1.0]),
        ];
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for row in 0..7 {
                    for col in 0..7 {
                        s += frame[i][row] * jet.hessian[row][col] * frame[j][col];
                    }
                }
                for (aa, twist_row) in units[i].iter().enumerate() {
                    s += jet.gradient[4 + aa] * twist_row[j];
                }
                m[i][j] = s;
            }
        }
        let trace = m[0][0] + m[1][1] + m[2][2] + m[3][3];
        let mut quad = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                quad += a[i] * a[j] * m[i][j];
            }
        }
        Ok(trace / norm - quad / norm.powi(3))
    }
}

fn horizontal_gradient_of(jet: &Jet, p: Point) -> [f64; 4] {
    let frame = frame_vectors(p);
    let mut a = [0.0; 4];
    for i in 0..4 {
        a[i] = frame[i]
            .iter()
            .zip(jet.gradient.iter())
            .map(|(x, g)| x * g)
            .sum();
    }
    a
}

/// Gradient step 1e-5 and Hessian step 1e-4 balance truncation against
/// roundoff for O(1) defining functions.
const FD_GRADIENT_STEP: f64 = 1e-5;
const FD_HESSIAN_STEP: f64 = 1e-4;

fn fd_jet(f: &(dyn Fn(Point) -> f64 + Send + Sync), p: Point) -> Jet {
    let c = p.coords();
    let at = |coords: [f64; 7]| f(Point::from_coords(coords));
    let mut gradient = [0.0; 7];
    for m in 0..7 {
        let h = FD_GRADIENT_STEP * c[m].abs().max(1.0);
        let mut up = c;
        let mut dn = c;
        up[m] += h;
        dn[m] -= h;
        gradient[m] = (at(up) - at(dn)) / (2.0 * h);
    }
    let value = f(p);
    let mut hessian = [[0.0; 7]; 7];
    for m in 0..7 {
        let hm = FD_HESSIAN_STEP * c[m].abs().max(1.0);
        let mut up = c;
        let mut dn = c;
        up[m] += hm;
        dn[m] -= hm;
        hessian[m][m] = (at(up) - 2.0 * value + at(dn)) / (hm * hm);
        for n in (m + 1)..7 {
            let hn = FD_HESSIAN_STEP * c[n].abs().max(1.0);
            let mut pp = c;
            let mut pm = c;
            let mut mp = c;
            let mut mm = c;
            pp[m] += hm;
            pp[n] += hn;
            pm[m] += hm;
            pm[n] -= hn;
            mp[m] -= hm;
            mp[n] += hn;
            mm[m] -= hm;
            mm[n] -= hn;
            let mixed = (at(pp) - at(pm) - at(mp) + at(mm)) / (4.0 * hm * hn);
            hessian[m][n] = mixed;
            hessian[n][m] = mixed;
        }
    }
    Jet {
        value,
        gradient,
        hessian,
    }
}

/// Radial profile of a rotationally invariant surface `|t| = f(|q|)`.
pub trait RadialProfile {
    /// f(r)
    fn height(&self, r: f64) -> f64;
    /// f'(r)
    fn slope(&self, r: f64) -> f64;
    /// f''(r)
    fn curvature(&self, r: f64) -> f64;
    /// Largest admissible radius (exclusive); infinite for graphs over all
    /// of the horizontal slice.
    fn max_radius(&self) -> f64;
}

/// Gauge sphere of radius R: f(r) = sqrt(R^4 - r^4).
#[derive(Debug, Clone, Copy)]
pub struct KoranyiProfile {
    pub radius: f64,
}

impl RadialProfile for KoranyiProfile {
    fn height(&self, r: f64) -> f64 {
        (self.radius.powi(4) - r.powi(4)).sqrt()
    }
    fn slope(&self, r: f64) -> f64 {
        -2.0 * r.powi(3) / self.height(r)
    }
    fn curvature(&self, r: f64) -> f64 {
        let f = self.height(r);
        -6.0 * r * r / f - 4.0 * r.powi(6) / f.powi(3)
    }
    fn max_radius(&self) -> f64 {
        self.radius
    }
}

/// Euclidean sphere of radius R: f(r) = sqrt(R^2 - r^2).
#[derive(Debug, Clone, Copy)]
pub struct EuclideanProfile {
    pub radius: f64,
}

impl RadialProfile for EuclideanProfile {
    fn height(&self, r: f64) -> f64 {
        (self.radius * self.radius - r * r).sqrt()
    }
    fn slope(&self, r: f64) -> f64 {
        -r / self.height(r)
    }
    fn curvature(&self, r: f64) -> f64 {
        -self.radius * self.radius / self.height(r).powi(3)
    }
    fn max_radius(&self) -> f64 {
        self.radius
    }
}

/// The minimal paraboloid f(r) = sqrt(4/3) r^2.
#[derive(Debug, Clone, Copy)]
pub struct ParaboloidProfile;

impl RadialProfile for ParaboloidProfile {
    fn height(&self, r: f64) -> f64 {
        (4.0f64 / 3.0).sqrt() * r * r
    }
    fn slope(&self, r: f64) -> f64 {
        2.0 * (4.0f64 / 3.0).sqrt() * r
    }
    fn curvature(&self, _r: f64) -> f64 {
        2.0 * (4.0f64 / 3.0).sqrt()
    }
    fn max_radius(&self) -> f64 {
        f64::INFINITY
    }
}

/// The cone f(r) = r, used as a non-minimal residual example.
#[derive(Debug, Clone, Copy)]
pub struct ConeProfile;

impl RadialProfile for ConeProfile {
    fn height(&self, r: f64) -> f64 {
        r
    }
    fn slope(&self, _r: f64) -> f64 {
        1.0
    }
    fn curvature(&self, _r: f64) -> f64 {
        0.0
    }
    fn max_radius(&self) -> f64 {
        f64::INFINITY
    }
}

/// Geodesic sphere of the horizontal metric, radius R, as a radial
/// profile. Parametrized by the rotation rate c in (0, 2 pi / R):
///
/// ```text
/// r(c) = (2/c) sin(c R / 2) = R sinc(c R / 2),
/// tau(c) = 2 (c R - sin(c R)) / c^2,
/// ```
///
/// with r decreasing from R (equator) to 0 (pole at tau = R^2/pi). The
/// profile derivatives come from the parametric chain rule.
#[derive(Debug, Clone, Copy)]
pub struct CcSphereProfile {
    radius: f64,
}

impl CcSphereProfile {
    pub fn new(radius: f64) -> Result<CcSphereProfile> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Input(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        Ok(CcSphereProfile { radius })
    }

    pub fn r_of_c(&self, c: f64) -> f64 {
        self.radius * sinc(0.5 * c * self.radius)
    }

    pub fn tau_of_c(&self, c: f64) -> f64 {
        2.0 * x_minus_sin(c * self.radius) / (c * c)
    }

    /// Invert r(c) on (0, 2 pi / R); r must lie strictly inside (0, R).
    pub fn c_of_r(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || r >= self.radius {
            return Err(Error::Domain(format!(
                "profile radius must lie in (0, {}), got {r}",
                self.radius
            )));
        }
        bisect(
            |c| self.r_of_c(c) - r,
            f64::MIN_POSITIVE,
            TAU / self.radius,
        )
    }

    /// (r'(c), r''(c), tau'(c), tau''(c)).
    fn parametric_derivatives(&self, c: f64) -> (f64, f64, f64, f64) {
        let big_r = self.radius;
        let half = 0.5 * c * big_r;
        let (s, co) = (half.sin(), half.cos());
        let rp = -2.0 * s / (c * c) + big_r * co / c;
        let rpp = 4.0 * s / (c * c * c) - 2.0 * big_r * co / (c * c)
            - big_r * big_r * s / (2.0 * c);
        let omc = one_minus_cos(c * big_r);
        let xms = x_minus_sin(c * big_r);
        let tp = 2.0 * big_r * omc / (c * c) - 4.0 * xms / (c * c * c);
        let tpp = 2.0 * big_r * big_r * (c * big_r).sin() / (c * c)
            - 8.0 * big_r * omc / (c * c * c)
            + 12.0 * xms / (c * c * c * c);
        (rp, rpp, tp, tpp)
    }
}

impl RadialProfile for CcSphereProfile {
    fn height(&self, r: f64) -> f64 {
        match self.c_of_r(r) {
            Ok(c) => self.tau_of_c(c),
            Err(_) => f64::NAN,
        }
    }
    fn slope(&self, r: f64) -> f64 {
        match self.c_of_r(r) {
            Ok(c) => {
                let (rp, _, tp, _) = self.parametric_derivatives(c);
                tp / rp
            }
            Err(_) => f64::NAN,
        }
    }
    fn curvature(&self, r: f64) -> f64 {
        match self.c_of_r(r) {
            Ok(c) => {
                let (rp, rpp, tp, tpp) = self.parametric_derivatives(c);
                (tpp * rp - tp * rpp) / rp.powi(3)
            }
            Err(_) => f64::NAN,
        }
    }
    fn max_radius(&self) -> f64 {
        self.radius
    }
}

/// The canonical evaluation point of a profile at horizontal radius r:
/// q on the real axis, t along the first vertical coordinate.
pub fn profile_point(profile: &dyn RadialProfile, r: f64) -> Result<Point> {
    if !(r > 0.0) || r >= profile.max_radius() {
        return Err(Error::Domain(format!(
            "profile radius must lie in (0, {}), got {r}",
            profile.max_radius()
        )));
    }
    let f = profile.height(r);
    if !f.is_finite() || f <= 0.0 {
        return Err(Error::Domain(format!(
            "profile height {f} at radius {r} is not usable"
        )));
    }
    Ok(Point::new(
        Quaternion::new(r, 0.0, 0.0, 0.0),
        Pure::new(f, 0.0, 0.0),
    ))
}

/// Closed-form horizontal mean curvature of the surface `|t| = f(|q|)` at
/// horizontal radius r.
pub fn hmc_profile(profile: &dyn RadialProfile, r: f64) -> Result<f64> {
    if !(r > 0.0) || r >= profile.max_radius() {
        return Err(Error::Domain(format!(
            "profile radius must lie in (0, {}), got {r}",
            profile.max_radius()
        )));
    }
    let f = profile.height(r);
    let fp = profile.slope(r);
    let fpp = profile.curvature(r);
    if !(f.is_finite() && fp.is_finite() && fpp.is_finite()) || f <= 0.0 {
        return Err(Error::Domain(format!(
            "profile data not finite at radius {r}"
        )));
    }
    let a2 = 4.0 * r * r + fp * fp;
    Ok((-4.0 * r * (2.0 * fp + r * fpp) - 3.0 * fp.powi(3) / r) / a2.powf(1.5)
        + 8.0 * r * r / (f * a2.sqrt()))
}

/// Polynomial minimality residual of the profile: zero exactly when the
/// closed-form curvature vanishes, with matching sign (it is the curvature
/// times the positive factor r f (4r^2 + f'^2)^(3/2)).
pub fn minimality_residual(profile: &dyn RadialProfile, r: f64) -> f64 {
    let f = profile.height(r);
    let fp = profile.slope(r);
    let fpp = profile.curvature(r);
    -4.0 * r * r * f * (2.0 * fp + r * fpp) - 3.0 * f * fp.powi(3)
        + 8.0 * r.powi(3) * (4.0 * r * r + fp * fp)
}

/// Bridge a radial profile to a full implicit surface with defining
/// function `u = |t| - f(|q|)` and analytic jets from the chain rule.
/// The jet is singular on the axes `q = 0` and `t = 0`; evaluation there
/// produces non-finite entries which the curvature routine rejects.
pub fn profile_surface<P>(name: &str, profile: P) -> ImplicitSurface
where
    P: RadialProfile + Send + Sync + 'static,
{
    ImplicitSurface::with_jet(name, move |p| {
        let x = [p.q.w, p.q.x, p.q.y, p.q.z];
        let t = [p.t.x, p.t.y, p.t.z];
        let r = p.q.norm();
        let tau = p.t.norm();
        let f = profile.height(r);
        let fp = profile.slope(r);
        let fpp = profile.curvature(r);
        let mut gradient = [0.0; 7];
        let mut hessian = [[0.0; 7]; 7];
        for m in 0..4 {
            gradient[m] = -fp * x[m] / r;
            for n in 0..4 {
                hessian[m][n] =
                    -(fpp - fp / r) * x[m] * x[n] / (r * r);
            }
            hessian[m][m] -= fp / r;
        }
        for a in 0..3 {
            gradient[4 + a] = t[a] / tau;
            for b in 0..3 {
                hessian[4 + a][4 + b] = -t[a] * t[b] / tau.powi(3);
            }
            hessian[4 + a][4 + a] += 1.0 / tau;
        }
        Jet {
            value: tau - f,
            gradient,
            hessian,
        }
    })
}

/// A previously reported closed form for the curvature of the Euclidean
/// sphere at horizontal radius r. Retained for comparison: it disagrees
/// with the value computed here (see the verify suite), e.g. at R = 1,
/// r = 1/sqrt(2) it gives 3.3679 where the profile machinery gives 6.2598.
pub fn euclidean_sphere_reference(radius: f64, r: f64) -> f64 {
    let tau2 = radius * radius - r * r;
    (3.0 * (4.0 + radius * radius) + 8.0 * r * r * (4.0 * tau2 + 3.0))
        / (8.0 * r * (tau2 + 1.0).powf(1.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gauge_sphere_point(rng: &mut StdRng, radius: f64) -> Point {
        // Random q, random t direction, |q|^4 + |t|^2 = R^4 with |q| < R.
        let r = radius * rng.gen_range(0.2..0.95);
        let mut q = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        q = q.scale(r / q.norm());
        let tau = (radius.powi(4) - r.powi(4)).sqrt();
        let mut t = Pure::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        t = t.scale(tau / t.norm());
        Point::new(q, t)
    }

    #[test]
    fn hyperplane_is_minimal_and_never_characteristic() {
        let s = ImplicitSurface::catalog("hyperplane-x1", 1.0).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let p = Point::from_coords([
                0.0,
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ]);
            assert!((s.horizontal_norm(p) - 1.0).abs() < 1e-14);
            assert!(!s.is_characteristic(p));
            assert!(s.horizontal_mean_curvature(p).unwrap().abs() < 1e-12);
        }
        assert!(s.value(Point::from_coords([0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])) == 0.3);
    }

    #[test]
    fn koranyi_sphere_curvature_is_nine_r_over_radius_squared() {
        // Rotational and vertical-frame symmetries make the closed form
        // valid at every surface point, not only the canonical one; random
        // points exercise every twist entry of the mixed-derivative matrix.
        let mut rng = StdRng::seed_from_u64(11);
        for &radius in &[0.5, 1.0, 2.0] {
            let s = ImplicitSurface::catalog("koranyi-sphere", radius).unwrap();
            for _ in 0..40 {
                let p = gauge_sphere_point(&mut rng, radius);
                assert!(s.value(p).abs() < 1e-12 * radius.powi(4));
                let h = s.horizontal_mean_curvature(p).unwrap();
                let expected = 9.0 * p.q.norm() / (radius * radius);
                assert!(
                    (h - expected).abs() < 1e-9 * (1.0 + expected),
                    "R {radius}: got {h}, expected {expected}"
                );
            }
        }
    }

    #[test]
    fn koranyi_pole_is_characteristic() {
        let s = ImplicitSurface::catalog("koranyi-sphere", 1.0).unwrap();
        let pole = Point::from_coords([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert!(s.is_characteristic(pole));
        match s.horizontal_mean_curvature(pole) {
            Err(Error::CharacteristicPoint { norm, tol }) => {
                assert!(norm <= tol);
            }
            other => panic!("expected a characteristic-point error, got {other:?}"),
        }
    }

    #[test]
    fn paraboloid_is_minimal_at_random_surface_points() {
        let s = ImplicitSurface::catalog("paraboloid-sqrt43", 1.0).unwrap();
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..60 {
            let mut q = Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let r = rng.gen_range(0.2..2.0);
            q = q.scale(r / q.norm());
            let tau = (4.0f64 / 3.0).sqrt() * r * r;
            let mut t = Pure::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            t = t.scale(tau / t.norm());
            let p = Point::new(q, t);
            assert!(s.value(p).abs() < 1e-12 * (1.0 + tau * tau));
            let h = s.horizontal_mean_curvature(p).unwrap();
            assert!(h.abs() < 1e-9, "curvature {h} at r = {r}");
        }
    }

    #[test]
    fn profile_formula_matches_implicit_machinery() {
        let radius = 1.0;
        let profiles: Vec<(&str, Box<dyn RadialProfile>)> = vec![
            ("koranyi", Box::new(KoranyiProfile { radius })),
            ("euclidean", Box::new(EuclideanProfile { radius })),
            ("paraboloid", Box::new(ParaboloidProfile)),
            ("cc", Box::new(CcSphereProfile::new(radius).unwrap())),
        ];
        for (name, profile) in &profiles {
            let surface = match *name {
                "koranyi" => ImplicitSurface::catalog("koranyi-sphere", radius).unwrap(),
                "euclidean" => ImplicitSurface::catalog("euclidean-sphere", radius).unwrap(),
                "paraboloid" => ImplicitSurface::catalog("paraboloid-sqrt43", radius).unwrap(),
                _ => ImplicitSurface::catalog("cc-sphere", radius).unwrap(),
            };
            for i in 1..20 {
                let r = 0.9 * radius * i as f64 / 20.0;
                let p = profile_point(profile.as_ref(), r).unwrap();
                assert!(surface.value(p).abs() < 1e-10);
                let via_formula = hmc_profile(profile.as_ref(), r).unwrap();
                let via_surface = surface.horizontal_mean_curvature(p).unwrap();
                assert!(
                    (via_formula - via_surface).abs() < 1e-8 * (1.0 + via_formula.abs()),
                    "{name} at r = {r}: formula {via_formula}, surface {via_surface}"
                );
            }
        }
    }

    #[test]
    fn euclidean_sphere_disagrees_with_reported_form() {
        let profile = EuclideanProfile { radius: 1.0 };
        let r = 0.5f64.sqrt();
        let computed = hmc_profile(&profile, r).unwrap();
        // 23 sqrt(2) / (3 sqrt(3))
        let expected = 23.0 * 2.0f64.sqrt() / (3.0 * 3.0f64.sqrt());
        assert!((computed - expected).abs() < 1e-12);
        let reported = euclidean_sphere_reference(1.0, r);
        assert!((reported - 3.367_876_570_984_916).abs() < 1e-9);
        assert!((computed - reported).abs() > 2.8);
    }

    #[test]
    fn finite_difference_jets_agree_with_analytic() {
        let analytic = ImplicitSurface::catalog("koranyi-sphere", 1.0).unwrap();
        let fd = ImplicitSurface::from_fn("koranyi-fd", |p| {
            let r2 = p.q.norm_sq();
            r2 * r2 + p.t.norm_sq() - 1.0
        });
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..10 {
            let p = gauge_sphere_point(&mut rng, 1.0);
            let ha = analytic.horizontal_mean_curvature(p).unwrap();
            let hf = fd.horizontal_mean_curvature(p).unwrap();
            assert!(
                (ha - hf).abs() < 1e-5 * (1.0 + ha.abs()),
                "analytic {ha} vs finite-difference {hf}"
            );
        }
    }

    #[test]
    fn cone_residual_reference_value() {
        assert!((minimality_residual(&ConeProfile, 1.0) - 29.0).abs() < 1e-12);
        // residual = 32 r^5 - 3 r for the cone
        let r = 0.7f64;
        assert!(
            (minimality_residual(&ConeProfile, r) - (32.0 * r.powi(5) - 3.0 * r)).abs() < 1e-12
        );
        assert!(minimality_residual(&ParaboloidProfile, 1.3).abs() < 1e-10);
        // Sign tracks the closed-form curvature.
        for &r in &[0.3, 0.6, 0.9] {
            let res = minimality_residual(&KoranyiProfile { radius: 1.0 }, r);
            let h = hmc_profile(&KoranyiProfile { radius: 1.0 }, r).unwrap();
            assert!(res.signum() == h.signum());
        }
    }

    #[test]
    fn cc_sphere_profile_parametrization_checks() {
        let profile = CcSphereProfile::new(1.0).unwrap();
        // Round trip through the monotone parametrization.
        for &r in &[0.1, 0.4, 0.7, 0.95] {
            let c = profile.c_of_r(r).unwrap();
            assert!((profile.r_of_c(c) - r).abs() < 1e-12);
        }
        // Pole height: tau -> R^2/pi as c -> 2 pi / R.
        let tau_pole = profile.tau_of_c(TAU);
        assert!((tau_pole - 1.0 / std::f64::consts::PI).abs() < 1e-12);
        // The pole is at gauge distance matching the vertical formula:
        // d(0, (0, tau)) = sqrt(pi tau) = R.
        assert!(((std::f64::consts::PI * tau_pole).sqrt() - 1.0).abs() < 1e-12);
        assert!(profile.c_of_r(1.0).is_err());
        assert!(profile.c_of_r(0.0).is_err());
    }

    #[test]
    fn cc_sphere_derivatives_match_finite_differences_in_c() {
        let profile = CcSphereProfile::new(1.0).unwrap();
        for &r in &[0.2, 0.5, 0.8] {
            let c = profile.c_of_r(r).unwrap();
            let fp = profile.slope(r);
            let fpp = profile.curvature(r);
            // Parametric finite differences at two step sizes: halving the
            // step must keep (or shrink) the mismatch, and both must be small.
            let mut last = f64::INFINITY;
            for &h in &[1e-4, 5e-5] {
                let (rp_f, tp_f) = (
                    (profile.r_of_c(c + h) - profile.r_of_c(c - h)) / (2.0 * h),
                    (profile.tau_of_c(c + h) - profile.tau_of_c(c - h)) / (2.0 * h),
                );
                let fp_fd = tp_f / rp_f;
                assert!((fp_fd - fp).abs() < 1e-6 * (1.0 + fp.abs()));
                // Second derivative: difference of first derivatives taken
                // as profile slopes at neighboring radii.
                let r_up = profile.r_of_c(c + h);
                let r_dn = profile.r_of_c(c - h);
                let fpp_fd = (profile.slope(r_up) - profile.slope(r_dn)) / (r_up - r_dn);
                let err = (fpp_fd - fpp).abs();
                assert!(err < 1e-5 * (1.0 + fpp.abs()), "fpp {fpp} vs fd {fpp_fd}");
                assert!(err < last * 4.0);
                last = err;
            }
        }
    }

    #[test]
    fn cc_sphere_curvature_signs_and_dilation_covariance() {
        // The profile rises from the pole (f'(0+) = 2R/pi > 0), so the
        // -3 f'^3 / r term drives the curvature to -infinity on the polar
        // cap; toward the equator it turns positive. The crossing sits
        // near r = 0.39 R.
        let unit = CcSphereProfile::new(1.0).unwrap();
        assert!(hmc_profile(&unit, 0.1).unwrap() < 0.0);
        assert!(hmc_profile(&unit, 0.35).unwrap() < 0.0);
        assert!(hmc_profile(&unit, 0.45).unwrap() > 0.0);
        assert!(hmc_profile(&unit, 0.9).unwrap() > 0.0);
        let scaled = CcSphereProfile::new(2.0).unwrap();
        for i in 1..10 {
            let r = 0.9 * i as f64 / 10.0;
            let h1 = hmc_profile(&unit, r).unwrap();
            // Dilation by 2: curvature halves at the scaled radius.
            let h2 = hmc_profile(&scaled, 2.0 * r).unwrap();
            assert!((h2 - 0.5 * h1).abs() < 1e-8 * (1.0 + h1.abs()));
        }
    }

    #[test]
    fn full_normal_is_unit_and_reduces_for_the_hyperplane() {
        let s = ImplicitSurface::catalog("hyperplane-x1", 1.0).unwrap();
        let params = MetricParams::new([1.0, 2.0, 0.5]).unwrap();
        let p = Point::from_coords([0.0, 0.4, -0.2, 0.9, 1.0, -2.0, 0.5]);
        let (nh, nv) = s.full_normal(p, &params).unwrap();
        assert!((nh[0] - 1.0).abs() < 1e-14);
        assert!(nh[1].abs() + nh[2].abs() + nh[3].abs() < 1e-14);
        assert!(nv.iter().all(|v| v.abs() < 1e-14));

        let k = ImplicitSurface::catalog("koranyi-sphere", 1.0).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        let p = gauge_sphere_point(&mut rng, 1.0);
        let (nh, nv) = k.full_normal(p, &params).unwrap();
        let norm2: f64 = nh.iter().map(|v| v * v).sum::<f64>()
            + nv.iter().map(|v| v * v).sum::<f64>();
        assert!((norm2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn catalog_rejects_unknown_names_and_bad_radii() {
        assert!(ImplicitSurface::catalog("moebius", 1.0).is_err());
        assert!(ImplicitSurface::catalog("koranyi-sphere", 0.0).is_err());
        assert!(ImplicitSurface::catalog("koranyi-sphere", f64::NAN).is_err());
    }
}
