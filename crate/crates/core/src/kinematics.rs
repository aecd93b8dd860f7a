//! Rigid-link geometry of compressed cells and lattices.
//!
//! A slanted link of length `s2` at joint angle `theta` has horizontal offset
//! `a = s2 cos(theta)` and height `s2 sin(theta)`. Compressing a cell by `c`
//! leaves it `l2 = 2 s2 - c` tall, which fixes `sin(theta)` but not which side
//! of `pi / 2` the joint folds to; that choice is the [`Bias`].

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::model::{GeometryParams, LatticeEncoding};
use crate::validity::{check_validity, link_offset, numeric_offsets};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("compression {0} mm leaves no cell height")]
    OverCompressed(f64),
    #[error("cell width {0} mm is not positive; the links would interfere")]
    GeometricInterference(f64),
    #[error("encoding is not valid ({0} crossbar violations)")]
    InvalidEncoding(usize),
    #[error("joint angle {0} is outside (0, pi)")]
    InvalidAngle(f64),
    #[error("the two angles give no change in height")]
    DegenerateInterval,
    #[error("the lattice has zero width; a single column has no lateral strain")]
    ZeroWidth,
    #[error("tiling is not smooth near theta = {0}")]
    NonSmoothTiling(f64),
    #[error("tiling length is not positive at theta = {0}")]
    NonPositiveTiling(f64),
    #[error("domain ({0}, {1}) is empty")]
    EmptyDomain(f64, f64),
}

/// Which side of the singular angle the cell folds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bias {
    /// `theta < pi / 2`, positive offset `a`.
    #[default]
    Acute,
    /// `theta > pi / 2`, negative offset `a`.
    Obtuse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellState {
    pub theta: f64,
    pub offset_a: f64,
    pub width_l1: f64,
    pub height_l2: f64,
}

/// Shape of one cell under the compression stored in `geom`.
pub fn compressed_cell(geom: &GeometryParams, bias: Bias) -> Result<CellState, KinematicsError> {
    let l2 = 2.0 * geom.s2 - geom.compression_c;
    if !(l2 > 0.0) {
        return Err(KinematicsError::OverCompressed(geom.compression_c));
    }
    let ratio = (l2 / (2.0 * geom.s2)).min(1.0);
    let acute = ratio.asin();
    // The offset comes from the height directly so that c = 0 gives an
    // exact zero.
    let magnitude = (geom.s2 * geom.s2 - (l2 / 2.0).powi(2)).max(0.0).sqrt();
    let (theta, offset_a) = match bias {
        Bias::Acute => (acute, magnitude),
        Bias::Obtuse => (PI - acute, -magnitude),
    };
    let width_l1 = 2.0 * geom.s1 + 2.0 * offset_a;
    if !(width_l1 > 0.0) {
        return Err(KinematicsError::GeometricInterference(width_l1));
    }
    Ok(CellState { theta, offset_a, width_l1, height_l2: l2 })
}

fn check_angle(theta: f64) -> Result<(), KinematicsError> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(KinematicsError::InvalidAngle(theta))
    }
}

/// Joint coordinates in millimetres. The top joint row sits at `y = 0` and y
/// decreases downward.
#[derive(Debug, Clone, PartialEq)]
pub struct Footprint {
    rows: usize,
    cols: usize,
    points: Vec<(f64, f64)>,
}

impl Footprint {
    /// Joint rows, `A + 1`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> (f64, f64) {
        self.points[row * self.cols + col]
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// `max y - min y`.
    pub fn height(&self) -> f64 {
        let (lo, hi) = self.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| (lo.min(y), hi.max(y)));
        hi - lo
    }

    /// Mean over joint rows of the distance between the outer columns.
    pub fn mean_row_span(&self) -> f64 {
        let total: f64 = (0..self.rows).map(|r| self.get(r, self.cols - 1).0 - self.get(r, 0).0).sum();
        total / self.rows as f64
    }

    /// `row,col,x_mm,y_mm` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,x_mm,y_mm\n");
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (x, y) = self.get(r, c);
                out.push_str(&format!("{r},{c},{x:.6},{y:.6}\n"));
            }
        }
        out
    }
}

/// Joint positions of a valid encoding at angle `theta`.
pub fn lattice_footprint(enc: &LatticeEncoding, geom: &GeometryParams, theta: f64) -> Result<Footprint, KinematicsError> {
    check_angle(theta)?;
    let report = check_validity(enc);
    if !report.is_valid {
        return Err(KinematicsError::InvalidEncoding(report.violations.len()));
    }
    let xs = numeric_offsets(&report.joint_grid, geom, theta);
    let dy = geom.s2 * theta.sin();
    let points = xs.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&x| (x, -(r as f64) * dy))).collect();
    Ok(Footprint { rows: enc.rows() + 1, cols: enc.cols(), points })
}

/// Poisson's ratio `-(lateral strain) / (axial strain)` between two angles.
/// Lateral size is [`Footprint::mean_row_span`], axial size the height.
pub fn global_poisson(enc: &LatticeEncoding, geom: &GeometryParams, theta0: f64, theta1: f64) -> Result<f64, KinematicsError> {
    check_angle(theta0)?;
    check_angle(theta1)?;
    if theta0 == theta1 {
        return Err(KinematicsError::DegenerateInterval);
    }
    let f0 = lattice_footprint(enc, geom, theta0)?;
    let f1 = lattice_footprint(enc, geom, theta1)?;
    let (w0, w1) = (f0.mean_row_span(), f1.mean_row_span());
    let (h0, h1) = (f0.height(), f1.height());
    if w0 == 0.0 {
        return Err(KinematicsError::ZeroWidth);
    }
    let axial = (h1 - h0) / h0;
    if axial == 0.0 || !axial.is_finite() {
        return Err(KinematicsError::DegenerateInterval);
    }
    Ok(-((w1 - w0) / w0) / axial)
}

/// Lengths of the two lattice translation vectors as functions of `theta`.
pub struct TilingFunctions {
    pub l1: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub l2: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl TilingFunctions {
    pub fn new(l1: impl Fn(f64) -> f64 + Send + Sync + 'static, l2: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { l1: Box::new(l1), l2: Box::new(l2) }
    }

    /// `l1 = 2 s1 + 2 s2 cos(theta)`, `l2 = 2 s2 sin(theta)`.
    pub fn honeycomb(s1: f64, s2: f64) -> Self {
        Self::new(move |t| 2.0 * s1 + 2.0 * s2 * t.cos(), move |t| 2.0 * s2 * t.sin())
    }

    /// `l1 = l2 = s (cos(theta) + sin(theta))`.
    pub fn rotating_squares(s: f64) -> Self {
        let f = move |t: f64| s * (t.cos() + t.sin());
        Self::new(f, f)
    }

    pub fn constant(l: f64) -> Self {
        Self::new(move |_| l, move |_| l)
    }
}

impl fmt::Debug for TilingFunctions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TilingFunctions { .. }")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransitionClassification {
    AlwaysAuxetic,
    AlwaysNonAuxetic,
    /// Both logarithmic derivatives vanish across the domain.
    AlwaysZeroStrain,
    SwitchesAt(f64),
}

impl fmt::Display for TransitionClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AlwaysAuxetic => f.write_str("always auxetic"),
            Self::AlwaysNonAuxetic => f.write_str("always non-auxetic"),
            Self::AlwaysZeroStrain => f.write_str("always (zero strain)"),
            Self::SwitchesAt(t) => write!(f, "switches at theta = {t:.9}"),
        }
    }
}

/// Differentiation step.
pub const DIFF_STEP: f64 = 1e-6;
const GRID_POINTS: usize = 2000;
const SMOOTHNESS_TOL: f64 = 1e-3;
const ZERO_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-6;

fn central(f: &dyn Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (f(t + h) - f(t - h)) / (2.0 * h)
}

/// `l' / l` at `theta`, checked against the estimate at half the step.
fn log_derivative(f: &dyn Fn(f64) -> f64, theta: f64) -> Result<f64, KinematicsError> {
    let l = f(theta);
    if !(l > 0.0) || !l.is_finite() {
        return Err(KinematicsError::NonPositiveTiling(theta));
    }
    let d1 = central(f, theta, DIFF_STEP);
    let d2 = central(f, theta, DIFF_STEP / 2.0);
    let floor = 1e-7 * l.abs().max(1.0);
    if !d1.is_finite() || (d1 - d2).abs() > SMOOTHNESS_TOL * d1.abs().max(d2.abs()) + floor {
        return Err(KinematicsError::NonSmoothTiling(theta));
    }
    Ok(d1 / l)
}

/// Diagonal of the G matrix, `(l1'/l1, l2'/l2)`.
pub fn g_diagonal(tiling: &TilingFunctions, theta: f64) -> Result<(f64, f64), KinematicsError> {
    Ok((log_derivative(&*tiling.l1, theta)?, log_derivative(&*tiling.l2, theta)?))
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64, KinematicsError> {
    let mut flo = log_derivative(f, lo)?;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let fm = log_derivative(f, mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Decides whether a tiling stays on one side of the auxetic boundary over
/// `domain` or crosses it.
///
/// `det G = g11 g22` changes sign only where one of the diagonal entries has
/// a root. At such a root the lattice switches behaviour when the trace is
/// nonzero; when both entries vanish together it does not, and the verdict
/// comes from the sign of `det G` elsewhere.
pub fn classify_transition(tiling: &TilingFunctions, domain: (f64, f64)) -> Result<TransitionClassification, KinematicsError> {
    let (lo, hi) = domain;
    if !(hi > lo) {
        return Err(KinematicsError::EmptyDomain(lo, hi));
    }
    let step = (hi - lo) / GRID_POINTS as f64;
    let grid: Vec<f64> = (0..GRID_POINTS).map(|i| lo + (i as f64 + 0.5) * step).collect();
    let g: Vec<(f64, f64)> = grid.iter().map(|&t| g_diagonal(tiling, t)).collect::<Result<_, _>>()?;

    let fns: [&dyn Fn(f64) -> f64; 2] = [&*tiling.l1, &*tiling.l2];
    let mut roots = Vec::new();
    for (k, f) in fns.iter().enumerate() {
        let comp = |i: usize| if k == 0 { g[i].0 } else { g[i].1 };
        for i in 0..GRID_POINTS - 1 {
            let (a, b) = (comp(i), comp(i + 1));
            if a.abs() < ZERO_TOL || b.abs() < ZERO_TOL {
                continue;
            }
            if (a > 0.0) != (b > 0.0) {
                roots.push(bisect(*f, grid[i], grid[i + 1])?);
            }
        }
    }
    roots.sort_by(f64::total_cmp);

    let delta = step / 4.0;
    for &root in &roots {
        let (g11, g22) = g_diagonal(tiling, root)?;
        let (l11, l22) = g_diagonal(tiling, (root - delta).max(lo + delta))?;
        let (r11, r22) = g_diagonal(tiling, (root + delta).min(hi - delta))?;
        let crosses = (l11 * l22 > 0.0) != (r11 * r22 > 0.0);
        if crosses && (g11 + g22).abs() > TRACE_TOL {
            return Ok(TransitionClassification::SwitchesAt(root));
        }
    }

    if g.iter().all(|&(a, b)| a.abs() < ZERO_TOL && b.abs() < ZERO_TOL) {
        return Ok(TransitionClassification::AlwaysZeroStrain);
    }
    let pos = g.iter().filter(|&&(a, b)| a * b > 0.0).count();
    let neg = g.iter().filter(|&&(a, b)| a * b < 0.0).count();
    Ok(match (pos, neg) {
        (0, 0) => TransitionClassification::AlwaysZeroStrain,
        (p, n) if p >= n => TransitionClassification::AlwaysAuxetic,
        _ => TransitionClassification::AlwaysNonAuxetic,
    })
}

/// `s2 cos(theta)` for the given geometry.
pub fn offset_at(geom: &GeometryParams, theta: f64) -> f64 {
    link_offset(geom.s2, theta)
}
