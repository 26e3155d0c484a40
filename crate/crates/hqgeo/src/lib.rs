//! Numerical kernel for the seven-dimensional quaternionic Heisenberg
//! group: group operations and the gauge norm, the left-invariant
//! horizontal frame and contact forms, a family of Riemannian extension
//! metrics with their connection and curvature, geodesics of both the
//! extension metrics and the horizontal metric, distances, horizontal
//! lifts and explicit horizontal paths, and horizontal mean curvature of
//! hypersurfaces.
//!
//! Points carry a quaternion part `q` and a three-component vertical part
//! `t`; coordinates are ordered `[x1, x2, x3, x4, t1, t2, t3]` throughout.
//!
//! Several published formulas disagree with what the group structure
//! forces. Everything here computes the self-consistent value by default;
//! [`Mode::AsPublished`] switches the affected vertical coefficients to
//! the printed ones so the difference can be measured.

pub mod cc;
pub mod curve;
pub mod error;
pub mod frame;
pub mod group;
pub mod numeric;
pub mod paths;
pub mod quat;
pub mod riemannian;
pub mod surface;
pub mod verify;

pub use cc::{
    cc_distance, cc_distance_origin, cc_sphere_sample, comparison_ratio, solve_cc_bvp,
    CcBvpSolution, CcGeodesic,
};
pub use curve::{CurveSample, SampledCurve};
pub use error::{Error, Result};
pub use group::{dilate, gauge_distance, inversion, rotate, symplectic, Point};
pub use paths::{connect, horizontal_lift, VerticalConnectorPlan};
pub use quat::{Pure, Quaternion};
pub use riemannian::{
    curvature_report, solve_gl_bvp, Connection, CurvatureReport, GlGeodesic, MetricParams,
};
pub use surface::{hmc_profile, ImplicitSurface, RadialProfile};
pub use verify::{CheckResult, Suite};

/// Which value of the contested vertical coefficients to use. `Corrected`
/// is the self-consistent choice (horizontal geodesics stay horizontal);
/// `AsPublished` reproduces the printed coefficients, which are off by a
/// factor of two in the vertical component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Corrected,
    AsPublished,
}

impl Mode {
    /// Coefficient of the vertical component of geodesics.
    #[inline]
    pub fn kappa(self) -> f64 {
        match self {
            Mode::Corrected => 2.0,
            Mode::AsPublished => 4.0,
        }
    }
}
