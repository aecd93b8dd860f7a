//! SVG and CSV drawings of a lattice at a given joint angle.

use std::fmt::Write as _;

use crate::kinematics::{lattice_footprint, Footprint, KinematicsError};
use crate::model::{GeometryParams, LatticeEncoding};
use crate::validity::has_crossbar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputKind {
    #[default]
    Svg,
    Csv,
}

/// Drawing settings. Lengths are in millimetres before scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSpec {
    pub theta: f64,
    pub stroke_width: f64,
    /// Output units per millimetre.
    pub scale: f64,
    pub kind: OutputKind,
}

impl RenderSpec {
    pub fn new(theta: f64, kind: OutputKind) -> Self {
        Self { theta, stroke_width: 1.0, scale: 1.0, kind }
    }
}

/// Draws `enc` as SVG or CSV.
pub fn render(enc: &LatticeEncoding, geom: &GeometryParams, opts: &RenderSpec) -> Result<String, KinematicsError> {
    assert!(opts.scale > 0.0, "scale must be positive");
    let fp = lattice_footprint(enc, geom, opts.theta)?;
    Ok(match opts.kind {
        OutputKind::Csv => fp.to_csv(),
        OutputKind::Svg => svg(&fp, opts),
    })
}

/// One `line` per link, one `circle` per joint, y pointing down.
fn svg(fp: &Footprint, opts: &RenderSpec) -> String {
    let s = opts.scale;
    let pt = |r: usize, c: usize| {
        let (x, y) = fp.get(r, c);
        (x * s, -y * s)
    };
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for r in 0..fp.rows() {
        for c in 0..fp.cols() {
            let (x, y) = pt(r, c);
            (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
        }
    }
    let margin = 0.05 * (x1 - x0).max(y1 - y0).max(s);
    let (vx, vy, vw, vh) = (x0 - margin, y0 - margin, x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let sw = opts.stroke_width * s;

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx:.3} {vy:.3} {vw:.3} {vh:.3}">"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="{sw:.3}" stroke-linecap="round">"#);
    let mut line = |a: (f64, f64), b: (f64, f64)| {
        let _ = writeln!(out, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, a.0, a.1, b.0, b.1);
    };
    for c in 0..fp.cols() {
        for r in 0..fp.rows() - 1 {
            line(pt(r, c), pt(r + 1, c));
        }
    }
    for c in 0..fp.cols().saturating_sub(1) {
        for r in (0..fp.rows()).filter(|&r| has_crossbar(r, c)) {
            line(pt(r, c), pt(r, c + 1));
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="white" stroke="black" stroke-width="{:.3}">"#, sw / 2.0);
    for r in 0..fp.rows() {
        for c in 0..fp.cols() {
            let (x, y) = pt(r, c);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#, 1.5 * sw);
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
