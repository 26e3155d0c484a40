//! The 7-dimensional group: points, composition, the gauge norm and its
//! metric, and the standard symmetries (translations, rotations, dilations,
//! inversion).
//!
//! A point is a pair (q, t) with q a full quaternion (horizontal part) and t
//! a pure quaternion (vertical part). Composition is
//!
//! ```text
//! (q1, t1) * (q2, t2) = (q1 + q2, t1 + t2 + 2 Im(q1 conj(q2)))
//! ```
//!
//! which makes the coordinate frame in [`crate::frame`] exactly
//! left-invariant and the rotations below group automorphisms.

use crate::error::{Error, Result};
use crate::quat::{Pure, Quaternion};

/// A group element (q, t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub q: Quaternion,
    pub t: Pure,
}

impl Point {
    pub const ORIGIN: Point = Point {
        q: Quaternion::ZERO,
        t: Pure::ZERO,
    };

    #[inline]
    pub const fn new(q: Quaternion, t: Pure) -> Self {
        Point { q, t }
    }

    /// Build from the 7 coordinates (x1, x2, x3, x4, t1, t2, t3).
    #[inline]
    pub fn from_coords(c: [f64; 7]) -> Self {
        Point::new(
            Quaternion::new(c[0], c[1], c[2], c[3]),
            Pure::new(c[4], c[5], c[6]),
        )
    }

    /// The 7 coordinates (x1, x2, x3, x4, t1, t2, t3).
    #[inline]
    pub fn coords(self) -> [f64; 7] {
        [
            self.q.w, self.q.x, self.q.y, self.q.z, self.t.x, self.t.y, self.t.z,
        ]
    }

    pub fn is_finite(self) -> bool {
        self.q.is_finite() && self.t.is_finite()
    }

    /// Group composition.
    #[inline]
    pub fn compose(self, other: Point) -> Point {
        let twist = (self.q * other.q.conj()).im().scale(2.0);
        Point::new(self.q + other.q, self.t + other.t + twist)
    }

    /// Group inverse (-q, -t).
    #[inline]
    pub fn inverse(self) -> Point {
        Point::new(-self.q, -self.t)
    }

    /// Gauge norm (|q|^4 + |t|^2)^(1/4).
    #[inline]
    pub fn gauge(self) -> f64 {
        (self.q.norm_sq().powi(2) + self.t.norm_sq()).powf(0.25)
    }
}

/// Gauge distance d(a, b) = |a^{-1} * b|_gauge. Left-invariant by
/// construction and homogeneous of degree 1 under dilations.
#[inline]
pub fn gauge_distance(a: Point, b: Point) -> f64 {
    a.inverse().compose(b).gauge()
}

/// Differential of the left translation by `g`, applied to a tangent vector
/// (dq, dt) at any point. Left translation is affine, so the differential is
/// the same linear map at every base point:
///
/// ```text
/// (dq, dt) -> (dq, dt + 2 Im(q_g conj(dq)))
/// ```
#[inline]
pub fn translate_tangent(g: Point, dq: Quaternion, dt: Pure) -> (Quaternion, Pure) {
    let twist = (g.q * dq.conj()).im().scale(2.0);
    (dq, dt + twist)
}

/// Anisotropic dilation (q, t) -> (d q, d^2 t), a group automorphism for any
/// d != 0.
#[inline]
pub fn dilate(p: Point, d: f64) -> Point {
    Point::new(p.q.scale(d), p.t.scale(d * d))
}

/// Right rotation (q, t) -> (q u, t) by a unit quaternion `u`.
///
/// Errors unless |u| = 1 to within 1e-12: for non-unit u the map is not an
/// automorphism.
pub fn rotate(p: Point, u: Quaternion) -> Result<Point> {
    check_unit(u)?;
    Ok(Point::new(p.q * u, p.t))
}

/// Symplectic action (q, t) -> (s q, s t s^{-1}) of a unit quaternion `s`.
/// Rotates the horizontal part on the left and the vertical part by the
/// induced SO(3) rotation.
pub fn symplectic(p: Point, s: Quaternion) -> Result<Point> {
    check_unit(s)?;
    let t = (s * p.t.as_quaternion() * s.conj()).im();
    Ok(Point::new(s * p.q, t))
}

fn check_unit(u: Quaternion) -> Result<()> {
    let err = (u.norm() - 1.0).abs();
    if err > 1e-12 {
        return Err(Error::Input(format!(
            "rotation parameter must be a unit quaternion (|u| - 1 = {err:e})"
        )));
    }
    Ok(())
}

/// Gauge inversion, defined away from the origin:
///
/// ```text
/// (q, t) -> ( -(|q|^2 - t)^{-1} q,  -t / (|q|^4 + |t|^2) )
/// ```
///
/// Satisfies inversion(inversion(p)) = p and
/// gauge(inversion(p)) * gauge(p) = 1.
pub fn inversion(p: Point) -> Result<Point> {
    let g4 = p.q.norm_sq().powi(2) + p.t.norm_sq();
    if g4 == 0.0 {
        return Err(Error::Domain("inversion is undefined at the origin".into()));
    }
    // |q|^2 - t is a quaternion with |.|^2 = |q|^4 + |t|^2, never zero here.
    let denom = Quaternion::new(p.q.norm_sq(), -p.t.x, -p.t.y, -p.t.z);
    let q = -(denom.inverse() * p.q);
    let t = p.t.scale(-1.0 / g4);
    Ok(Point::new(q, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a.q - b.q).norm() < tol && (a.t - b.t).norm() < tol
    }

    #[test]
    fn composition_twist_orientation() {
        // (i,0) * (j,0): twist = 2 Im(i * conj(j)) = 2 Im(i * (-j)) = -2k.
        let a = Point::new(Quaternion::I, Pure::ZERO);
        let b = Point::new(Quaternion::J, Pure::ZERO);
        let ab = a.compose(b);
        assert_eq!(ab.q, Quaternion::I + Quaternion::J);
        assert_eq!(ab.t, Pure::new(0.0, 0.0, -2.0));
        let ba = b.compose(a);
        assert_eq!(ba.t, Pure::new(0.0, 0.0, 2.0));
    }

    #[test]
    fn inverse_and_associativity() {
        let a = Point::from_coords([0.3, -1.0, 0.2, 0.7, 1.0, -0.4, 0.1]);
        let b = Point::from_coords([-0.8, 0.5, 1.4, -0.2, 0.0, 2.0, -1.1]);
        let c = Point::from_coords([1.1, 0.0, -0.6, 0.9, -0.7, 0.3, 0.5]);
        assert!(close(a.compose(a.inverse()), Point::ORIGIN, 1e-15));
        assert!(close(
            a.compose(b).compose(c),
            a.compose(b.compose(c)),
            1e-14
        ));
    }

    #[test]
    fn gauge_is_homogeneous_under_dilation() {
        let p = Point::from_coords([0.5, -0.3, 0.8, 0.1, 2.0, -1.0, 0.4]);
        for &d in &[0.5, 2.0, 7.3] {
            let scaled = dilate(p, d);
            assert!((scaled.gauge() - d * p.gauge()).abs() < 1e-12);
        }
    }

    #[test]
    fn dilation_is_an_automorphism() {
        let a = Point::from_coords([0.3, -1.0, 0.2, 0.7, 1.0, -0.4, 0.1]);
        let b = Point::from_coords([-0.8, 0.5, 1.4, -0.2, 0.0, 2.0, -1.1]);
        let d = 1.7;
        assert!(close(
            dilate(a.compose(b), d),
            dilate(a, d).compose(dilate(b, d)),
            1e-13
        ));
    }

    #[test]
    fn rotation_and_symplectic_are_automorphisms() {
        let u = Pure::new(0.4, -0.2, 0.9).exp();
        let a = Point::from_coords([0.3, -1.0, 0.2, 0.7, 1.0, -0.4, 0.1]);
        let b = Point::from_coords([-0.8, 0.5, 1.4, -0.2, 0.0, 2.0, -1.1]);
        let lhs = rotate(a.compose(b), u).unwrap();
        let rhs = rotate(a, u).unwrap().compose(rotate(b, u).unwrap());
        assert!(close(lhs, rhs, 1e-13));

        let lhs = symplectic(a.compose(b), u).unwrap();
        let rhs = symplectic(a, u)
            .unwrap()
            .compose(symplectic(b, u).unwrap());
        assert!(close(lhs, rhs, 1e-13));
    }

    #[test]
    fn symplectic_example() {
        // s = i acting on (1, j): horizontal 1 -> i, vertical j -> i j i^{-1} = -j.
        let p = Point::new(Quaternion::ONE, Pure::new(0.0, 1.0, 0.0));
        let out = symplectic(p, Quaternion::I).unwrap();
        assert!(close(
            out,
            Point::new(Quaternion::I, Pure::new(0.0, -1.0, 0.0)),
            1e-15
        ));
    }

    #[test]
    fn inversion_is_an_involution_with_reciprocal_gauge() {
        let p = Point::from_coords([0.5, -0.3, 0.8, 0.1, 2.0, -1.0, 0.4]);
        let ip = inversion(p).unwrap();
        assert!((ip.gauge() * p.gauge() - 1.0).abs() < 1e-14);
        assert!(close(inversion(ip).unwrap(), p, 1e-13));
        assert!(inversion(Point::ORIGIN).is_err());
    }

    #[test]
    fn rotation_rejects_non_unit_parameters() {
        let p = Point::ORIGIN;
        assert!(rotate(p, Quaternion::new(1.1, 0.0, 0.0, 0.0)).is_err());
    }
}
