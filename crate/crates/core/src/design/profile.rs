//! Approximating a drawn profile with a `+`/`-` edge.
//!
//! The profile is cut into `rows_a` slices of equal height. Every slice of the
//! edge moves sideways by exactly `a`, so `a` is set to the widest slice of the
//! profile and the compression follows from `a = s2 cos(theta)`. A running
//! position then walks down the slices: step right when the profile at the
//! end of the slice is at or beyond the current position, left otherwise.

use super::DesignError;
use crate::kinematics::{compressed_cell, Bias};
use crate::model::{EdgeProfile, GeometryParams};

/// Profile samples `(x, y)` in millimetres, strictly monotone in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePolyline {
    points: Vec<(f64, f64)>,
}

impl ProfilePolyline {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, DesignError> {
        if points.len() < 2 || points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(DesignError::NotSingleValued);
        }
        let increasing = points[1].1 > points[0].1;
        let monotone = points.windows(2).all(|w| if increasing { w[1].1 > w[0].1 } else { w[1].1 < w[0].1 });
        if !monotone {
            return Err(DesignError::NotSingleValued);
        }
        Ok(Self { points })
    }

    /// Samples `f(y)` at `n + 1` evenly spaced heights from `y0` to `y1`.
    pub fn from_fn(f: impl Fn(f64) -> f64, y0: f64, y1: f64, n: usize) -> Result<Self, DesignError> {
        let pts = (0..=n)
            .map(|i| {
                let y = y0 + (y1 - y0) * i as f64 / n as f64;
                (f(y), y)
            })
            .collect();
        Self::new(pts)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Number of segments.
    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Length and angle from the y axis of each segment.
    pub fn segments(&self) -> Vec<(f64, f64)> {
        self.points.windows(2).map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            (dx.hypot(dy), dx.atan2(dy.abs()))
        }).collect()
    }

    /// Linear interpolation of x at height `y`.
    fn x_at(&self, y: f64) -> f64 {
        let p = &self.points;
        let i = p.windows(2).position(|w| (w[0].1 - y) * (w[1].1 - y) <= 0.0).unwrap_or(p.len() - 2);
        let ((x0, y0), (x1, y1)) = (p[i], p[i + 1]);
        if y == y0 {
            return x0;
        }
        if y == y1 {
            return x1;
        }
        x0 + (x1 - x0) * (y - y0) / (y1 - y0)
    }

    /// x at `n + 1` evenly spaced heights from the first to the last point.
    pub fn resample(&self, n: usize) -> Vec<f64> {
        let (y0, y1) = (self.points[0].1, self.points[self.points.len() - 1].1);
        (0..=n).map(|i| self.x_at(y0 + (y1 - y0) * i as f64 / n as f64)).collect()
    }

    /// Parses `x y` pairs, one per line; `#` comments and blank lines skipped.
    pub fn parse(text: &str) -> Result<Self, DesignError> {
        let mut pts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<f64> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| DesignError::BadPointsLine(i + 1))?;
            match nums[..] {
                [x, y] => pts.push((x, y)),
                _ => return Err(DesignError::BadPointsLine(i + 1)),
            }
        }
        Self::new(pts)
    }
}

/// Result of [`approximate_profile`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileApproximation {
    pub edge: EdgeProfile,
    /// Compression at which the edge shows the profile, mm.
    pub compression_c: f64,
    /// Horizontal step per slice, mm.
    pub offset_a: f64,
}

/// Greedy `+`/`-` approximation of `profile` with `rows_a` slices.
pub fn approximate_profile(profile: &ProfilePolyline, rows_a: usize, geom: &GeometryParams) -> Result<ProfileApproximation, DesignError> {
    if rows_a == 0 {
        return Err(DesignError::EmptyEdge);
    }
    let xs = profile.resample(rows_a);
    let limit = geom.s1.min(geom.s2);
    let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let span = hi - lo;
    if span > rows_a as f64 * limit {
        return Err(DesignError::SpanExceeded { span, limit: rows_a as f64 * limit });
    }
    let a = xs.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
    if a >= limit {
        return Err(DesignError::SlopeUnachievable { required: a, limit });
    }
    if a == 0.0 {
        return Ok(ProfileApproximation { edge: EdgeProfile::flat(rows_a), compression_c: 0.0, offset_a: 0.0 });
    }

    let sin_theta = (1.0 - (a / geom.s2).powi(2)).sqrt();
    let compression_c = 2.0 * geom.s2 * (1.0 - sin_theta);

    let x0 = xs[0];
    let mut current = 0.0;
    let slopes = xs[1..]
        .iter()
        .map(|&x| {
            let up = x - x0 >= current;
            current += if up { a } else { -a };
            up
        })
        .collect();
    Ok(ProfileApproximation { edge: EdgeProfile::from_bools(slopes), compression_c, offset_a: a })
}

/// The polyline an edge traces at the compression in `geom`: one vertex per
/// joint, `a` sideways and `s2 sin(theta)` down per link.
pub fn edge_staircase(edge: &EdgeProfile, geom: &GeometryParams) -> Result<ProfilePolyline, DesignError> {
    if geom.compression_c == 0.0 {
        return Err(DesignError::NoCompression);
    }
    let cell = compressed_cell(geom, Bias::Acute)?;
    let dy = geom.s2 * cell.theta.sin();
    let mut x = 0.0;
    let mut pts = vec![(0.0, 0.0)];
    for (i, &b) in edge.slopes().iter().enumerate() {
        x += if b { cell.offset_a } else { -cell.offset_a };
        pts.push((x, (i + 1) as f64 * dy));
    }
    ProfilePolyline::new(pts)
}
