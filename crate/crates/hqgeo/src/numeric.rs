//! Series-safe scalar helpers and small numerical routines shared across the
//! crate: the sinc-family functions that appear in group exponentials and
//! geodesic formulas, composite Simpson quadrature, and a guarded bisection
//! driver for the monotone scalar equations solved by the distance and
//! boundary-value routines.

use crate::error::{Error, Result};

/// Switch point below which the sinc-family functions use truncated Taylor
/// series. At 1e-2 the direct formulas already lose ~6 digits to cancellation
/// in the worst member ((x - sin x)/x^3); the series are exact to f64 here.
const SERIES_CUTOFF: f64 = 1e-2;

/// Wider cutoff for `x_minus_sin` itself: the subtraction x - sin(x) loses
/// roughly 3*log10(1/x) digits, so the polynomial is used up to 0.5 where its
/// own truncation error is ~1e-15 relative.
const X_MINUS_SIN_CUTOFF: f64 = 0.5;

/// sin(x)/x, with sinc(0) = 1.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        // sin(x)/x = 1 - x^2/6 + x^4/120 - x^6/5040
        1.0 + x2 * (-1.0 / 6.0 + x2 * (1.0 / 120.0 - x2 / 5040.0))
    } else {
        x.sin() / x
    }
}

/// (1 - cos x)/x^2, with value 1/2 at x = 0.
pub fn one_minus_cos_over_x2(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        // (1-cos x)/x^2 = 1/2 - x^2/24 + x^4/720 - x^6/40320
        0.5 + x2 * (-1.0 / 24.0 + x2 * (1.0 / 720.0 - x2 / 40320.0))
    } else {
        // 1 - cos x = 2 sin^2(x/2) avoids cancellation for all x.
        let s = (0.5 * x).sin();
        2.0 * s * s / (x * x)
    }
}

/// 1 - cos x computed without cancellation (= 2 sin^2(x/2)).
pub fn one_minus_cos(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

/// x - sin x. Direct subtraction is catastrophic for small x, so a Taylor
/// polynomial through x^13 is used below [`X_MINUS_SIN_CUTOFF`].
pub fn x_minus_sin(x: f64) -> f64 {
    if x.abs() < X_MINUS_SIN_CUTOFF {
        let x2 = x * x;
        x * x2
            * (1.0 / 6.0
                + x2 * (-1.0 / 120.0
                    + x2 * (1.0 / 5040.0
                        + x2 * (-1.0 / 362_880.0
                            + x2 * (1.0 / 39_916_800.0 - x2 / 6_227_020_800.0)))))
    } else {
        x - x.sin()
    }
}

/// (x - sin x)/x^3, with value 1/6 at x = 0.
pub fn x_minus_sin_over_x3(x: f64) -> f64 {
    if x.abs() < X_MINUS_SIN_CUTOFF {
        let x2 = x * x;
        1.0 / 6.0
            + x2 * (-1.0 / 120.0
                + x2 * (1.0 / 5040.0
                    + x2 * (-1.0 / 362_880.0
                        + x2 * (1.0 / 39_916_800.0 - x2 / 6_227_020_800.0))))
    } else {
        (x - x.sin()) / (x * x * x)
    }
}

/// (1 - cos x)/(x - sin x): the profile ratio inverted by [`crate::cc::x0_solve`].
/// Decreases monotonically from +inf at 0+ to 0 at 2*pi. Near zero it behaves
/// like 3/x, which the series branch reproduces without under/overflow.
pub fn cos_sin_ratio(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        // (1-cos x)/(x-sin x) = (3/x)(1 - x^2/30 - x^4/12600 + O(x^6))
        (3.0 / x) * (1.0 - x2 / 30.0 - x2 * x2 / 12_600.0)
    } else {
        one_minus_cos(x) / x_minus_sin(x)
    }
}

/// x * cot(x), with value 1 at x = 0. Series below the cutoff keeps the
/// removable singularity smooth; the pole at x = pi is the caller's domain
/// boundary.
pub fn x_cot_x(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 3.0 - x2 * x2 / 45.0 - 2.0 * x2 * x2 * x2 / 945.0
    } else {
        x / x.tan()
    }
}

/// Composite Simpson quadrature over uniformly spaced samples.
///
/// `values` holds f at the sample points of a uniform grid with spacing `h`.
/// An even sample count (odd interval count) falls back to a trapezoid rule
/// on the final interval; construction code in this crate always supplies an
/// odd count so the fallback is never exercised there.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let pairs = (n - 1) / 2;
    let mut sum = 0.0;
    for p in 0..pairs {
        let i = 2 * p;
        sum += values[i] + 4.0 * values[i + 1] + values[i + 2];
    }
    let mut total = sum * h / 3.0;
    if (n - 1) % 2 == 1 {
        total += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    total
}

/// Bracketed bisection for a monotone function, used after a sign-change scan.
///
/// Runs until the interval collapses to adjacent floats, then returns the
/// midpoint. The iteration cap is generous because a root near zero of a
/// wide bracket needs one halving per lost exponent bit, not 53 total.
/// The caller is responsible for supplying a genuine bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoConvergence(format!(
            "bisection bracket [{lo:e}, {hi:e}] has no sign change"
        )));
    }
    for _ in 0..2200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Interval collapsed to adjacent floats.
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scan `cells` uniform cells of [lo, hi] for the first sign change of `f`,
/// then bisect inside it. Errors if no cell brackets a root.
pub fn scan_and_bisect<F: Fn(f64) -> f64 + Copy>(
    f: F,
    lo: f64,
    hi: f64,
    cells: usize,
) -> Result<f64> {
    let width = (hi - lo) / cells as f64;
    let mut a = lo;
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    for i in 1..=cells {
        let b = if i == cells { hi } else { lo + width * i as f64 };
        let fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() != fb.signum() {
            return bisect(f, a, b);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoConvergence(format!(
        "no sign change of the residual in [{lo:e}, {hi:e}] over {cells} cells"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_family_matches_direct_evaluation_at_moderate_arguments() {
        for &x in &[0.02, 0.1, 0.7, 1.3, 2.9] {
            // The naive references lose ~eps/x^2 to cancellation themselves,
            // so the comparison tolerance carries that term.
            let tol = 2.0 * f64::EPSILON / (x * x) + 1e-15;
            assert!((sinc(x) - x.sin() / x).abs() < 1e-15);
            assert!((one_minus_cos_over_x2(x) - (1.0 - x.cos()) / (x * x)).abs() < tol);
            assert!((x_minus_sin_over_x3(x) - (x - x.sin()) / x.powi(3)).abs() < tol);
        }
    }

    #[test]
    fn sinc_family_limits() {
        assert_eq!(sinc(0.0), 1.0);
        assert_eq!(one_minus_cos_over_x2(0.0), 0.5);
        assert!((x_minus_sin_over_x3(0.0) - 1.0 / 6.0).abs() < 1e-16);
        // cos_sin_ratio ~ 3/x as x -> 0
        let x = 1e-6;
        assert!((cos_sin_ratio(x) * x / 3.0 - 1.0).abs() < 1e-12);
        assert_eq!(x_cot_x(0.0), 1.0);
        assert!((x_cot_x(0.3) - 0.3 / 0.3f64.tan()).abs() < 1e-15);
    }

    #[test]
    fn series_branches_are_continuous_at_the_cutoffs() {
        // Adjacent floats straddling each function's own cutoff: the argument
        // moves by one ulp, so any visible jump is branch mismatch, not slope.
        let checks: [(fn(f64) -> f64, f64); 6] = [
            (sinc, SERIES_CUTOFF),
            (one_minus_cos_over_x2, SERIES_CUTOFF),
            (cos_sin_ratio, SERIES_CUTOFF),
            (x_cot_x, SERIES_CUTOFF),
            (x_minus_sin, X_MINUS_SIN_CUTOFF),
            (x_minus_sin_over_x3, X_MINUS_SIN_CUTOFF),
        ];
        for (f, cut) in checks {
            let below = f(cut.next_down());
            let above = f(cut);
            assert!(
                ((below - above) / above).abs() < 1e-12,
                "branch mismatch at cutoff {cut}: {below} vs {above}"
            );
        }
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let n = 257;
        let h = 1.0 / (n as f64 - 1.0);
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 * h;
                3.0 * x * x * x - x + 2.0
            })
            .collect();
        // integral of 3x^3 - x + 2 over [0,1] = 3/4 - 1/2 + 2 = 9/4
        assert!((simpson(&values, h) - 2.25).abs() < 1e-14);
    }

    #[test]
    fn bisect_finds_monotone_roots() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 1e-14);
        let root = scan_and_bisect(|x| x.cos(), 0.0, 3.0, 64).unwrap();
        assert!((root - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }
}
