//! Pixel displays: glyphs and height maps as stacks of programmed layers.
//!
//! A layer is one lattice whose left edge shows a column of pixels. Each
//! pixel takes two links, and the joint between them is the pixel's cap.
//! Heights are read back from how far each cap sticks out: two offsets of `a`
//! per unit of height.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use super::generate::{generate_lattice, joint_alphas, GenerationMode};
use super::profile::{approximate_profile, ProfilePolyline};
use super::DesignError;
use crate::kinematics::{compressed_cell, lattice_footprint, Bias};
use crate::model::{EdgeProfile, GeometryParams, HeightMap};

/// Glyph width in pixels, which is also the number of layers per glyph.
pub const GLYPH_WIDTH: usize = 6;
/// Glyph height in pixels.
pub const GLYPH_HEIGHT: usize = 7;

/// A bitmap font of fixed-size glyphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Font {
    glyphs: BTreeMap<char, Vec<Vec<bool>>>,
}

impl Font {
    /// The embedded block font: A to Z and space.
    pub fn builtin() -> &'static Font {
        static FONT: OnceLock<Font> = OnceLock::new();
        FONT.get_or_init(|| Font::parse(include_str!("font6x7.txt")).expect("embedded font parses"))
    }

    /// Parses a font file: each glyph is a `[c]` line followed by
    /// [`GLYPH_HEIGHT`] rows of [`GLYPH_WIDTH`] characters, `#` for a raised
    /// pixel and `.` for a flat one. Other lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Font, DesignError> {
        let mut glyphs = BTreeMap::new();
        let mut current: Option<(char, Vec<Vec<bool>>)> = None;
        let bad = |line: usize, msg: &str| DesignError::BadFont(format!("line {line}: {msg}"));
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let mut chars = name.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(bad(i + 1, "glyph name must be one character"));
                };
                if let Some((prev, rows)) = current.take() {
                    if rows.len() != GLYPH_HEIGHT {
                        return Err(bad(i + 1, &format!("glyph {prev:?} has {} rows", rows.len())));
                    }
                    glyphs.insert(prev, rows);
                }
                current = Some((c, Vec::new()));
                continue;
            }
            if line.is_empty() || (line.starts_with('#') && current.as_ref().map_or(true, |(_, r)| r.len() == GLYPH_HEIGHT)) {
                continue;
            }
            let Some((_, rows)) = current.as_mut() else {
                return Err(bad(i + 1, "pixels before the first glyph name"));
            };
            if rows.len() == GLYPH_HEIGHT || line.chars().count() != GLYPH_WIDTH {
                return Err(bad(i + 1, "glyph rows must be 6 characters, 7 rows per glyph"));
            }
            let row = line
                .chars()
                .map(|c| match c {
                    '#' => Ok(true),
                    '.' => Ok(false),
                    _ => Err(bad(i + 1, "pixels must be '#' or '.'")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if let Some((prev, rows)) = current {
            if rows.len() != GLYPH_HEIGHT {
                return Err(DesignError::BadFont(format!("glyph {prev:?} has {} rows", rows.len())));
            }
            glyphs.insert(prev, rows);
        }
        Ok(Font { glyphs })
    }

    /// The glyph's pixel rows, top first. Lower-case letters fall back to
    /// upper case.
    pub fn glyph(&self, c: char) -> Result<&[Vec<bool>], DesignError> {
        self.glyphs.get(&c).or_else(|| self.glyphs.get(&c.to_ascii_uppercase())).map(Vec::as_slice).ok_or(DesignError::UnknownGlyph(c))
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.glyphs.keys().copied()
    }
}

/// One programmed layer: its edge, plus the height its lowest pixel stands
/// for, which the edge alone cannot show.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile {
    pub edge: EdgeProfile,
    pub base_level: u32,
}

impl fmt::Display for LayerProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.edge)
    }
}

/// One layer per glyph column. A raised pixel becomes `+-`, a flat one `-+`.
pub fn letter_to_layers(glyph: char, font: &Font) -> Result<Vec<LayerProfile>, DesignError> {
    let rows = font.glyph(glyph)?;
    Ok((0..GLYPH_WIDTH)
        .map(|col| {
            let pixels: Vec<bool> = rows.iter().map(|r| r[col]).collect();
            let slopes = pixels.iter().flat_map(|&p| [p, !p]).collect();
            let base_level = u32::from(pixels.iter().all(|&p| p));
            LayerProfile { edge: EdgeProfile::from_bools(slopes), base_level }
        })
        .collect())
}

/// Pixel heights a layer shows once compressed as in `geom`, read from the
/// footprint of its generated lattice.
pub fn expressed_heights(layer: &LayerProfile, geom: &GeometryParams) -> Result<Vec<u32>, DesignError> {
    if geom.compression_c == 0.0 {
        return Err(DesignError::NoCompression);
    }
    let cell = compressed_cell(geom, Bias::Acute)?;
    let lattice = generate_lattice(&layer.edge, GenerationMode::MinimizeSpread)?.lattice;
    let footprint = lattice_footprint(&lattice, geom, cell.theta)?;
    let caps: Vec<f64> = (1..footprint.rows()).step_by(2).map(|r| footprint.get(r, 0).0).collect();
    let lowest = caps.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(caps.iter().map(|x| layer.base_level + ((x - lowest) / (2.0 * cell.offset_a)).round() as u32).collect())
}

/// An adjacent pixel pair inside one layer whose heights differ by more
/// than one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightViolation {
    pub layer: usize,
    /// Upper pixel of the pair.
    pub row: usize,
    pub step: u32,
}

impl fmt::Display for HeightViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "layer {} rows {}-{}: step {}", self.layer, self.row, self.row + 1, self.step)
    }
}

/// Flags every in-layer step larger than one unit. Steps between layers are
/// free.
pub fn validate_heightmap(map: &HeightMap) -> Vec<HeightViolation> {
    let mut out = Vec::new();
    for layer in 0..map.layers() {
        let h = map.layer(layer);
        for (row, w) in h.windows(2).enumerate() {
            let step = w[0].abs_diff(w[1]);
            if step > 1 {
                out.push(HeightViolation { layer, row, step });
            }
        }
    }
    out
}

/// Per-layer edges for a height map and the compression that shows them.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightLayers {
    pub layers: Vec<LayerProfile>,
    pub compression_c: f64,
}

/// Joint offsets of one layer. Caps sit two offsets apart per unit of height.
/// A joint between caps of different height takes their mean; between equal
/// caps, and at the two ends, it sits one offset outward for pixels at the
/// layer's lowest height and one inward otherwise.
fn layer_alphas(heights: &[u32]) -> Vec<i64> {
    let base = *heights.iter().min().expect("layers are non-empty");
    let cap = |p: usize| 2 * i64::from(heights[p] - base);
    let around = |p: usize| if heights[p] == base { cap(p) + 1 } else { cap(p) - 1 };
    let n = heights.len();
    let mut alphas = vec![0i64; 2 * n + 1];
    for p in 0..n {
        alphas[2 * p + 1] = cap(p);
    }
    alphas[0] = around(0);
    alphas[2 * n] = around(n - 1);
    for p in 1..n {
        alphas[2 * p] = if heights[p - 1] == heights[p] { around(p) } else { (cap(p - 1) + cap(p)) / 2 };
    }
    alphas
}

/// Compiles each layer of a valid height map into an edge. Each layer's
/// joint offsets are traced as a staircase at the compression in `geom`, and
/// [`approximate_profile`] recovers the edge and the compression from it.
pub fn heightmap_to_layers(map: &HeightMap, geom: &GeometryParams) -> Result<HeightLayers, DesignError> {
    let violations = validate_heightmap(map);
    if !violations.is_empty() {
        return Err(DesignError::HeightSteps(violations));
    }
    if geom.compression_c == 0.0 {
        return Err(DesignError::NoCompression);
    }
    let cell = compressed_cell(geom, Bias::Acute)?;
    let dy = geom.s2 * cell.theta.sin();
    let mut layers = Vec::with_capacity(map.layers());
    let mut compression_c: f64 = 0.0;
    for s in 0..map.layers() {
        let heights = map.layer(s);
        let alphas = layer_alphas(&heights);
        let stairs = ProfilePolyline::new(alphas.iter().enumerate().map(|(j, &al)| (al as f64 * cell.offset_a, j as f64 * dy)).collect())?;
        let approx = approximate_profile(&stairs, alphas.len() - 1, geom)?;
        debug_assert_eq!(joint_alphas(approx.edge.slopes()).windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>(), alphas.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>());
        compression_c = compression_c.max(approx.compression_c);
        layers.push(LayerProfile { edge: approx.edge, base_level: *heights.iter().min().unwrap() });
    }
    Ok(HeightLayers { layers, compression_c })
}
