//! Left-invariant frame, dual contact forms, Lie brackets, and the triple of
//! almost complex structures on the horizontal distribution.
//!
//! Coordinates are ordered (x1, x2, x3, x4, t1, t2, t3). The frame consists
//! of four horizontal fields X1..X4 and three vertical fields T1..T3 = d/dt_a.
//! The horizontal fields are dual to dx_i and annihilated by the contact
//! forms theta_a returned by [`theta`].

use crate::group::Point;

/// t-component matrix of the horizontal frame: `P[a][i]` is the dt_a
/// coefficient of X_{i+1} at the point with horizontal coordinates x.
/// All entries are linear in x, which [`frame_bracket`] and the
/// mixed-derivative reduction in the surface module rely on.
#[inline]
pub fn twist_matrix(x: [f64; 4]) -> [[f64; 4]; 3] {
    let [x1, x2, x3, x4] = x;
    [
        [2.0 * x2, -2.0 * x1, 2.0 * x4, -2.0 * x3],
        [2.0 * x3, -2.0 * x4, -2.0 * x1, 2.0 * x2],
        [2.0 * x4, 2.0 * x3, -2.0 * x2, -2.0 * x1],
    ]
}

/// The seven frame vectors at `p`, as coordinate components. Index 0..=3
/// are the horizontal fields, 4..=6 the vertical fields.
pub fn frame_vectors(p: Point) -> [[f64; 7]; 7] {
    let c = p.coords();
    let tw = twist_matrix([c[0], c[1], c[2], c[3]]);
    let mut out = [[0.0; 7]; 7];
    for i in 0..4 {
        out[i][i] = 1.0;
        for a in 0..3 {
            out[i][4 + a] = tw[a][i];
        }
    }
    for a in 0..3 {
        out[4 + a][4 + a] = 1.0;
    }
    out
}

/// A single frame vector (index 0..=6) at `p`.
pub fn frame_vector(p: Point, i: usize) -> [f64; 7] {
    frame_vectors(p)[i]
}

/// The contact forms evaluated on a coordinate tangent vector at `p`:
/// theta_a(v) = v_t[a] - sum_i P[a][i] v_x[i].
pub fn theta(p: Point, v: [f64; 7]) -> [f64; 3] {
    let c = p.coords();
    let tw = twist_matrix([c[0], c[1], c[2], c[3]]);
    let mut out = [0.0; 3];
    for a in 0..3 {
        let mut s = v[4 + a];
        for i in 0..4 {
            s -= tw[a][i] * v[i];
        }
        out[a] = s;
    }
    out
}

/// Express a coordinate tangent vector at `p` in the frame basis:
/// components 0..=3 are the X-coefficients (equal to the dx components),
/// components 4..=6 are theta_a(v).
pub fn to_frame_coords(p: Point, v: [f64; 7]) -> [f64; 7] {
    let th = theta(p, v);
    [v[0], v[1], v[2], v[3], th[0], th[1], th[2]]
}

/// Inverse of [`to_frame_coords`]: build the coordinate components of
/// sum_i c_i X_i + sum_a c_{4+a} T_a at `p`.
pub fn from_frame_coords(p: Point, c: [f64; 7]) -> [f64; 7] {
    let vecs = frame_vectors(p);
    let mut out = [0.0; 7];
    for (k, vec) in vecs.iter().enumerate() {
        for (o, comp) in out.iter_mut().zip(vec.iter()) {
            *o += c[k] * comp;
        }
    }
    out
}

/// Coordinate components of a horizontal vector with frame coefficients `c`.
pub fn horizontal_vector(p: Point, c: [f64; 4]) -> [f64; 7] {
    from_frame_coords(p, [c[0], c[1], c[2], c[3], 0.0, 0.0, 0.0])
}

/// Lie bracket [F_i, F_j] of two frame fields, evaluated at `p` in
/// coordinate components.
///
/// Every frame coefficient is affine in the coordinates, so the directional
/// derivative of a field along a vector is the exact difference
/// `field(p + v) - field(p)`; no finite-difference truncation enters.
pub fn frame_bracket(p: Point, i: usize, j: usize) -> [f64; 7] {
    let fi = frame_vector(p, i);
    let fj = frame_vector(p, j);
    let shift = |v: [f64; 7]| {
        let c = p.coords();
        let mut s = [0.0; 7];
        for k in 0..7 {
            s[k] = c[k] + v[k];
        }
        Point::from_coords(s)
    };
    let dj_along_i = frame_vector(shift(fi), j);
    let di_along_j = frame_vector(shift(fj), i);
    let mut out = [0.0; 7];
    for k in 0..7 {
        out[k] = (dj_along_i[k] - fj[k]) - (di_along_j[k] - fi[k]);
    }
    out
}

/// Structure constants of the horizontal brackets: T-components of
/// [X_{i+1}, X_{j+1}]. All horizontal brackets are vertical and constant:
///
/// ```text
/// [X1,X2] = [X3,X4] = -4 T1
/// [X1,X3] = [X4,X2] = -4 T2
/// [X1,X4] = [X2,X3] = -4 T3
/// ```
pub fn bracket_table(i: usize, j: usize) -> [f64; 3] {
    debug_assert!(i < 4 && j < 4);
    let mut out = [0.0; 3];
    let pairs: [(usize, usize, usize, f64); 6] = [
        (0, 1, 0, -4.0),
        (2, 3, 0, -4.0),
        (0, 2, 1, -4.0),
        (3, 1, 1, -4.0),
        (0, 3, 2, -4.0),
        (1, 2, 2, -4.0),
    ];
    for &(a, b, slot, val) in &pairs {
        if (i, j) == (a, b) {
            out[slot] = val;
        } else if (i, j) == (b, a) {
            out[slot] = -val;
        }
    }
    out
}

/// Apply the a-th almost complex structure (a in 0..=2) to the frame
/// coefficients of a horizontal vector. The action on the basis is
///
/// ```text
/// J1: X1 -> X2, X2 -> -X1, X3 -> X4, X4 -> -X3
/// J2: X1 -> X3, X3 -> -X1, X4 -> X2, X2 -> -X4
/// J3: X1 -> X4, X4 -> -X1, X2 -> X3, X3 -> -X2
/// ```
///
/// and satisfies the quaternion relations J1 J2 = J3 (cyclically).
pub fn apply_j(a: usize, c: [f64; 4]) -> [f64; 4] {
    match a {
        0 => [-c[1], c[0], -c[3], c[2]],
        1 => [-c[2], c[3], c[0], -c[1]],
        2 => [-c[3], -c[2], c[1], c[0]],
        _ => panic!("complex structure index out of range: {a}"),
    }
}

/// Evaluate d(theta_a) on two horizontal vectors given by frame
/// coefficients, with the alternating-average wedge convention
/// `(alpha ^ beta)(X, Y) = (alpha(X) beta(Y) - alpha(Y) beta(X)) / 2`.
/// Under this convention d(theta_a)(X, Y) = 2 <J_a X, Y>.
pub fn dtheta(a: usize, u: [f64; 4], v: [f64; 4]) -> f64 {
    let w = |i: usize, j: usize| u[i] * v[j] - u[j] * v[i];
    match a {
        0 => 2.0 * (w(0, 1) + w(2, 3)),
        1 => 2.0 * (w(0, 2) + w(3, 1)),
        2 => 2.0 * (w(0, 3) + w(1, 2)),
        _ => panic!("contact form index out of range: {a}"),
    }
}

/// Inner product of horizontal frame coefficients (the frame is declared
/// orthonormal on the distribution).
#[inline]
pub fn horizontal_dot(u: [f64; 4], v: [f64; 4]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}
