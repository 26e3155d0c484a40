//! Quaternion arithmetic.
//!
//! Layout is scalar-first: `w + x i + y j + z k` with the Hamilton
//! conventions `i^2 = j^2 = k^2 = ijk = -1`, `ij = k`, `jk = i`, `ki = j`.
//! [`Pure`] is the imaginary subspace, used for the vertical coordinates of
//! the group and for all exponential/rotation formulas.

use std::ops::{Add, Mul, Neg, Sub};

/// Threshold below which `exp` of a pure quaternion switches to series
/// evaluation of sin|v|/|v|.
const EXP_SERIES_CUTOFF: f64 = 1e-8;

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A pure (imaginary) quaternion `x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pure {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse `conj(q)/|q|^2`. Panics on zero input only via
    /// the resulting non-finite components; callers guard the zero case.
    #[inline]
    pub fn inverse(self) -> Self {
        self.conj().scale(1.0 / self.norm_sq())
    }

    /// Imaginary part as a pure quaternion.
    #[inline]
    pub fn im(self) -> Pure {
        Pure::new(self.x, self.y, self.z)
    }

    /// Real (scalar) part.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Pure {
    pub const ZERO: Pure = Pure::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Pure { x, y, z }
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Pure::new(self.x * s, self.y * s, self.z * s)
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn dot(self, other: Pure) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Exponential of a pure quaternion: a unit quaternion
    /// `cos|v| + (v/|v|) sin|v|`. The sin|v|/|v| factor is evaluated by
    /// Taylor series expansion below [`EXP_SERIES_CUTOFF`] so exp is smooth
    /// through v = 0.
    pub fn exp(self) -> Quaternion {
        let r = self.norm();
        let s = if r < EXP_SERIES_CUTOFF {
            let r2 = r * r;
            1.0 - r2 / 6.0 + r2 * r2 / 120.0
        } else {
            r.sin() / r
        };
        Quaternion::new(r.cos(), self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product.
    #[inline]
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Add for Pure {
    type Output = Pure;
    #[inline]
    fn add(self, rhs: Pure) -> Pure {
        Pure::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Pure {
    type Output = Pure;
    #[inline]
    fn sub(self, rhs: Pure) -> Pure {
        Pure::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Pure {
    type Output = Pure;
    #[inline]
    fn neg(self) -> Pure {
        Pure::new(-self.x, -self.y, -self.z)
    }
}
