//! Sampled curves in the group: a dense grid of (parameter, point, velocity)
//! triples split into smooth segments, with the geometric operations the
//! path and geodesic code needs (reversal, translation, dilation,
//! concatenation, horizontal length, contact residual).

use crate::error::{Error, Result};
use crate::frame::theta;
use crate::group::{dilate as dilate_point, translate_tangent, Point};
use crate::numeric::simpson;
use crate::quat::{Pure, Quaternion};

/// One sample of a parametrized curve. `velocity` holds the coordinate
/// components of the derivative with respect to `lambda`.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    pub lambda: f64,
    pub point: Point,
    pub velocity: [f64; 7],
}

/// A curve on [0, 1] sampled on a per-segment uniform grid. Segment
/// boundaries mark parameter values where the velocity may jump (corners of
/// concatenated paths); within a segment the curve is smooth.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    samples: Vec<CurveSample>,
    /// Start index of each segment; segment s covers
    /// `samples[starts[s]..starts[s+1]]` (or to the end for the last one).
    segment_starts: Vec<usize>,
}

impl SampledCurve {
    /// Sample a smooth curve on a uniform grid of `n` points over [0, 1].
    /// `n` must be odd and at least 3 so Simpson quadrature applies exactly.
    pub fn sample_uniform<F>(n: usize, f: F) -> Result<SampledCurve>
    where
        F: Fn(f64) -> (Point, [f64; 7]),
    {
        if n < 3 || n % 2 == 0 {
            return Err(Error::Input(format!(
                "sample count must be odd and >= 3, got {n}"
            )));
        }
        let h = 1.0 / (n as f64 - 1.0);
        let mut samples = Vec::with_capacity(n);
        for i in 0..n {
            let lambda = if i == n - 1 { 1.0 } else { i as f64 * h };
            let (point, velocity) = f(lambda);
            samples.push(CurveSample {
                lambda,
                point,
                velocity,
            });
        }
        Ok(SampledCurve {
            samples,
            segment_starts: vec![0],
        })
    }

    /// Assemble a curve from pre-sampled smooth segments. Consecutive
    /// segments must agree at the junction point to within `tol`; the
    /// parameter must already be global (spanning [0, 1] across all
    /// segments together).
    pub fn from_segments(segments: Vec<Vec<CurveSample>>, tol: f64) -> Result<SampledCurve> {
        if segments.is_empty() || segments.iter().any(|s| s.len() < 2) {
            return Err(Error::Input(
                "each curve segment needs at least two samples".into(),
            ));
        }
        let mut samples = Vec::new();
        let mut starts = Vec::with_capacity(segments.len());
        for seg in segments {
            if let Some(prev) = samples.last() {
                let prev: &CurveSample = prev;
                let a = prev.point.coords();
                let b = seg[0].point.coords();
                for k in 0..7 {
                    if (a[k] - b[k]).abs() > tol {
                        return Err(Error::Input(format!(
                            "segment junction mismatch in coordinate {k}: {} vs {}",
                            a[k], b[k]
                        )));
                    }
                }
            }
            starts.push(samples.len());
            samples.extend(seg);
        }
        Ok(SampledCurve {
            samples,
            segment_starts: starts,
        })
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn segment_starts(&self) -> &[usize] {
        &self.segment_starts
    }

    pub fn start(&self) -> Point {
        self.samples[0].point
    }

    pub fn endpoint(&self) -> Point {
        self.samples[self.samples.len() - 1].point
    }

    /// Index ranges of the segments.
    fn segment_ranges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.segment_starts.len());
        for (s, &start) in self.segment_starts.iter().enumerate() {
            let end = self
                .segment_starts
                .get(s + 1)
                .copied()
                .unwrap_or(self.samples.len());
            out.push((start, end));
        }
        out
    }

    /// Reverse orientation: lambda -> 1 - lambda, velocities negated.
    pub fn reverse(&self) -> SampledCurve {
        let n = self.samples.len();
        let mut samples: Vec<CurveSample> = self
            .samples
            .iter()
            .rev()
            .map(|s| {
                let mut v = s.velocity;
                for c in v.iter_mut() {
                    *c = -*c;
                }
                CurveSample {
                    lambda: 1.0 - s.lambda,
                    point: s.point,
                    velocity: v,
                }
            })
            .collect();
        // Exact 0 and 1 at the ends regardless of rounding in 1 - lambda.
        samples[0].lambda = 0.0;
        samples[n - 1].lambda = 1.0;
        let mut starts: Vec<usize> = self
            .segment_ranges()
            .iter()
            .rev()
            .map(|&(_, end)| n - end)
            .collect();
        starts[0] = 0;
        SampledCurve {
            samples,
            segment_starts: starts,
        }
    }

    /// Left-translate the whole curve by `g`. The differential of a left
    /// translation is base-point independent, so velocities map exactly.
    pub fn translate(&self, g: Point) -> SampledCurve {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                let v = s.velocity;
                let (dq, dt) = translate_tangent(
                    g,
                    Quaternion::new(v[0], v[1], v[2], v[3]),
                    Pure::new(v[4], v[5], v[6]),
                );
                CurveSample {
                    lambda: s.lambda,
                    point: g.compose(s.point),
                    velocity: [dq.w, dq.x, dq.y, dq.z, dt.x, dt.y, dt.z],
                }
            })
            .collect();
        SampledCurve {
            samples,
            segment_starts: self.segment_starts.clone(),
        }
    }

    /// Apply the anisotropic dilation of factor `d` pointwise.
    pub fn dilate(&self, d: f64) -> SampledCurve {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                let v = s.velocity;
                CurveSample {
                    lambda: s.lambda,
                    point: dilate_point(s.point, d),
                    velocity: [
                        d * v[0],
                        d * v[1],
                        d * v[2],
                        d * v[3],
                        d * d * v[4],
                        d * d * v[5],
                        d * d * v[6],
                    ],
                }
            })
            .collect();
        SampledCurve {
            samples,
            segment_starts: self.segment_starts.clone(),
        }
    }

    /// Concatenate two curves, mapping `self` to [0, 1/2] and `other` to
    /// [1/2, 1] (velocities doubled accordingly). The endpoint of `self`
    /// must coincide with the start of `other` to within `tol` in every
    /// coordinate.
    pub fn concat(&self, other: &SampledCurve, tol: f64) -> Result<SampledCurve> {
        let a_end = self.endpoint().coords();
        let b_start = other.start().coords();
        for k in 0..7 {
            if (a_end[k] - b_start[k]).abs() > tol {
                return Err(Error::Input(format!(
                    "concatenation endpoints differ in coordinate {k}: {} vs {}",
                    a_end[k], b_start[k]
                )));
            }
        }
        let mut samples = Vec::with_capacity(self.samples.len() + other.samples.len());
        let rescale = |s: &CurveSample, offset: f64| {
            let mut v = s.velocity;
            for c in v.iter_mut() {
                *c *= 2.0;
            }
            CurveSample {
                lambda: offset + 0.5 * s.lambda,
                point: s.point,
                velocity: v,
            }
        };
        samples.extend(self.samples.iter().map(|s| rescale(s, 0.0)));
        let split = samples.len();
        samples.extend(other.samples.iter().map(|s| rescale(s, 0.5)));
        samples[split - 1].lambda = 0.5;
        samples[split].lambda = 0.5;
        let last = samples.len() - 1;
        samples[last].lambda = 1.0;

        let mut starts: Vec<usize> = self.segment_starts.clone();
        starts.extend(other.segment_starts.iter().map(|&s| s + split));
        Ok(SampledCurve {
            samples,
            segment_starts: starts,
        })
    }

    /// Horizontal (Carnot-Caratheodory) length: per-segment Simpson
    /// quadrature of the horizontal speed. Vertical velocity components are
    /// ignored; use [`SampledCurve::max_theta_residual`] to check that they
    /// vanish when the curve claims to be horizontal.
    pub fn length_cc(&self) -> f64 {
        let mut total = 0.0;
        for (start, end) in self.segment_ranges() {
            let seg = &self.samples[start..end];
            if seg.len() < 2 {
                continue;
            }
            let speeds: Vec<f64> = seg
                .iter()
                .map(|s| {
                    let v = s.velocity;
                    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt()
                })
                .collect();
            let h = (seg[seg.len() - 1].lambda - seg[0].lambda) / (seg.len() as f64 - 1.0);
            total += simpson(&speeds, h);
        }
        total
    }

    /// Largest contact-form residual along the curve:
    /// max over samples of |theta(velocity)|_2. Zero (up to roundoff) for
    /// horizontal curves.
    pub fn max_theta_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| {
                let th = theta(s.point, s.velocity);
                (th[0] * th[0] + th[1] * th[1] + th[2] * th[2]).sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Structural validation: finite values, lambda runs from 0 to 1 and is
    /// strictly increasing inside segments, and on every interior grid point
    /// the stored velocity agrees with the central difference of the
    /// positions. The finite-difference tolerance is self-calibrating: the
    /// discrepancy of a smooth parametrization is (h^2/6) times the third
    /// derivative, which varies slowly along a segment, so each sample is
    /// compared against the per-segment median discrepancy. A median is used
    /// rather than a local curvature estimate so that a corrupted sample
    /// cannot widen its own tolerance.
    pub fn validate(&self) -> Result<()> {
        if self.samples.is_empty() {
            return Err(Error::Input("curve has no samples".into()));
        }
        if self.segment_starts.first() != Some(&0) {
            return Err(Error::Input("first segment must start at index 0".into()));
        }
        for s in &self.samples {
            if !s.lambda.is_finite() || !s.point.is_finite() {
                return Err(Error::Input("non-finite curve sample".into()));
            }
            if s.velocity.iter().any(|v| !v.is_finite()) {
                return Err(Error::Input("non-finite curve velocity".into()));
            }
        }
        if self.samples[0].lambda != 0.0 || self.samples[self.samples.len() - 1].lambda != 1.0 {
            return Err(Error::Input("curve parameter must span [0, 1]".into()));
        }
        for (start, end) in self.segment_ranges() {
            let seg = &self.samples[start..end];
            for w in seg.windows(2) {
                if w[1].lambda <= w[0].lambda {
                    return Err(Error::Input(
                        "curve parameter must increase within a segment".into(),
                    ));
                }
            }
            if seg.len() < 3 {
                continue;
            }
            for k in 0..7 {
                let discrepancies: Vec<(usize, f64)> = (1..seg.len() - 1)
                    .map(|i| {
                        let dl = seg[i + 1].lambda - seg[i - 1].lambda;
                        let fd =
                            (seg[i + 1].point.coords()[k] - seg[i - 1].point.coords()[k]) / dl;
                        (i, (fd - seg[i].velocity[k]).abs())
                    })
                    .collect();
                let mut sorted: Vec<f64> = discrepancies.iter().map(|d| d.1).collect();
                sorted.sort_by(f64::total_cmp);
                let median = sorted[sorted.len() / 2];
                for (i, disc) in discrepancies {
                    let tol = 10.0 * median + 1e-8 * (1.0 + seg[i].velocity[k].abs());
                    if disc > tol {
                        return Err(Error::Input(format!(
                            "velocity inconsistent with positions at lambda = {} \
                             (component {k}: discrepancy {disc}, segment median {median})",
                            seg[i].lambda
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
