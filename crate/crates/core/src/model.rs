//! Core value types and the line-oriented text formats.
//!
//! Everything here is an immutable value once constructed. Constructors check
//! the invariants so the rest of the crate can rely on them.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use thiserror::Error;

/// Errors raised while building or parsing model values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed header: expected \"A B\" with positive integers")]
    MalformedHeader,
    #[error("row {0} has the wrong length")]
    BadRowLength(usize),
    #[error("unexpected character at row {0}, column {1}")]
    BadCharacter(usize, usize),
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("trailing data after row {0}")]
    TrailingData(usize),
    #[error("negative height at row {0}, column {1}")]
    NegativeHeight(usize, usize),
    #[error("row {0} has a different number of entries than row 1")]
    RaggedRows(usize),
    #[error("not an integer at row {0}, column {1}")]
    BadToken(usize, usize),
    #[error("empty input")]
    Empty,
    #[error("encoding dimensions must be at least 1x1")]
    EmptyEncoding,
    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),
    #[error("edge profile character {0:?} is not '+' or '-'")]
    BadEdgeCharacter(char),
}

/// Cell dimensions in millimetres and the applied vertical compression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryParams {
    /// Horizontal half-link length.
    pub s1: f64,
    /// Vertical (slanted) link length.
    pub s2: f64,
    /// Crossbar length `L`.
    pub crossbar_l: f64,
    /// Vertical compression per cell.
    pub compression_c: f64,
}

impl GeometryParams {
    pub fn new(s1: f64, s2: f64, crossbar_l: f64, compression_c: f64) -> Result<Self, ModelError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(s1) || !ok(s2) || !ok(crossbar_l) {
            return Err(ModelError::InvalidGeometry("s1, s2 and crossbar_l must be positive"));
        }
        if !compression_c.is_finite() || compression_c < 0.0 || compression_c >= 2.0 * s2 {
            return Err(ModelError::InvalidGeometry("compression must lie in [0, 2*s2)"));
        }
        Ok(Self { s1, s2, crossbar_l, compression_c })
    }

    /// Same cell with a different compression.
    pub fn with_compression(self, compression_c: f64) -> Result<Self, ModelError> {
        Self::new(self.s1, self.s2, self.crossbar_l, compression_c)
    }
}

impl Default for GeometryParams {
    /// 10 mm half links, 20 mm slanted links and 20 mm crossbars, uncompressed.
    fn default() -> Self {
        Self { s1: 10.0, s2: 20.0, crossbar_l: 20.0, compression_c: 0.0 }
    }
}

/// An `A x B` matrix of vertical-link slopes. `true` is a positive slope: the
/// joint below sits `+a` to the right of the joint above.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeEncoding {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl LatticeEncoding {
    /// Builds an encoding from rows of bits.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self, ModelError> {
        let a = rows.len();
        let b = rows.first().map_or(0, |r| r.as_ref().len());
        if a == 0 || b == 0 {
            return Err(ModelError::EmptyEncoding);
        }
        let mut bits = Vec::with_capacity(a * b);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != b {
                return Err(ModelError::BadRowLength(i + 1));
            }
            bits.extend_from_slice(r);
        }
        Ok(Self { rows: a, cols: b, bits })
    }

    /// Builds an encoding from a row-major bit vector.
    pub fn from_bits(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self, ModelError> {
        if rows == 0 || cols == 0 {
            return Err(ModelError::EmptyEncoding);
        }
        if bits.len() != rows * cols {
            return Err(ModelError::BadRowLength(bits.len() / cols.max(1) + 1));
        }
        Ok(Self { rows, cols, bits })
    }

    /// Builds an encoding from its columns, each of length `rows`.
    pub fn from_columns<C: AsRef<[bool]>>(columns: &[C]) -> Result<Self, ModelError> {
        let b = columns.len();
        let a = columns.first().map_or(0, |c| c.as_ref().len());
        if a == 0 || b == 0 {
            return Err(ModelError::EmptyEncoding);
        }
        let mut bits = vec![false; a * b];
        for (c, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != a {
                return Err(ModelError::BadRowLength(col.len() + 1));
            }
            for (r, &bit) in col.iter().enumerate() {
                bits[r * b + c] = bit;
            }
        }
        Ok(Self { rows: a, cols: b, bits })
    }

    /// Decodes the low `rows * cols` bits of `mask`, row-major with bit 0 at (0, 0).
    pub fn from_mask(rows: usize, cols: usize, mask: u64) -> Result<Self, ModelError> {
        if rows == 0 || cols == 0 {
            return Err(ModelError::EmptyEncoding);
        }
        assert!(rows * cols <= 64, "mask holds at most 64 bits");
        let bits = (0..rows * cols).map(|i| mask >> i & 1 == 1).collect();
        Ok(Self { rows, cols, bits })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.bits[row * self.cols + col]
    }

    /// `+1` for a positive slope, `-1` for a negative one.
    pub fn sign(&self, row: usize, col: usize) -> i64 {
        if self.get(row, col) {
            1
        } else {
            -1
        }
    }

    /// Row-major bits.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn column(&self, col: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    /// Every bit inverted, i.e. the horizontal mirror image.
    pub fn flipped(&self) -> Self {
        Self { bits: self.bits.iter().map(|b| !b).collect(), ..self.clone() }
    }

    /// Rows in reverse order.
    pub fn rows_reversed(&self) -> Self {
        let mut bits = Vec::with_capacity(self.bits.len());
        for r in (0..self.rows).rev() {
            bits.extend_from_slice(&self.bits[r * self.cols..(r + 1) * self.cols]);
        }
        Self { bits, ..self.clone() }
    }

    /// The contiguous band of rows `start..end`.
    pub fn row_band(&self, start: usize, end: usize) -> Result<Self, ModelError> {
        if start >= end || end > self.rows {
            return Err(ModelError::EmptyEncoding);
        }
        let bits = self.bits[start * self.cols..end * self.cols].to_vec();
        Ok(Self { rows: end - start, cols: self.cols, bits })
    }
}

impl fmt::Display for LatticeEncoding {
    /// Writes the `.lat` text form without a trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rows, self.cols)?;
        for row in self.bits.chunks(self.cols) {
            f.write_str("\n")?;
            for &b in row {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl FromStr for LatticeEncoding {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_encoding(s)
    }
}

/// Parses the `.lat` format: a header line `A B`, then `A` rows of `B`
/// characters from `{0, 1}`. Lines starting with `#` and blank lines are
/// skipped anywhere. Row numbers in errors are 1-based data rows.
pub fn parse_encoding(text: &str) -> Result<LatticeEncoding, ModelError> {
    let mut lines = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty());

    let header = lines.next().ok_or(ModelError::MalformedHeader)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| ModelError::MalformedHeader))
        .collect::<Result<_, _>>()?;
    let [a, b] = dims[..] else {
        return Err(ModelError::MalformedHeader);
    };
    if a == 0 || b == 0 {
        return Err(ModelError::MalformedHeader);
    }

    let mut bits = Vec::with_capacity(a * b);
    let mut found = 0;
    for line in lines {
        found += 1;
        if found > a {
            return Err(ModelError::TrailingData(a));
        }
        let line = line.trim_start();
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(ModelError::BadCharacter(found, j + 1)),
            }
        }
        if line.chars().count() != b {
            return Err(ModelError::BadRowLength(found));
        }
    }
    if found < a {
        return Err(ModelError::MissingRows { expected: a, found });
    }
    Ok(LatticeEncoding { rows: a, cols: b, bits })
}

/// Inverse of [`parse_encoding`]; no trailing newline.
pub fn serialize_encoding(enc: &LatticeEncoding) -> String {
    enc.to_string()
}

/// An exact joint x-offset `lambda * L + alpha * a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SymbolicOffset {
    pub lambda: i64,
    pub alpha: i64,
}

impl SymbolicOffset {
    pub const ZERO: Self = Self { lambda: 0, alpha: 0 };
    /// One crossbar length.
    pub const L: Self = Self { lambda: 1, alpha: 0 };
    /// One link offset.
    pub const A: Self = Self { lambda: 0, alpha: 1 };

    pub const fn new(lambda: i64, alpha: i64) -> Self {
        Self { lambda, alpha }
    }

    /// `lambda * crossbar_l + alpha * a`.
    pub fn evaluate(self, crossbar_l: f64, a: f64) -> f64 {
        self.lambda as f64 * crossbar_l + self.alpha as f64 * a
    }
}

impl Add for SymbolicOffset {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.lambda + rhs.lambda, self.alpha + rhs.alpha)
    }
}

impl Sub for SymbolicOffset {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.lambda - rhs.lambda, self.alpha - rhs.alpha)
    }
}

impl fmt::Display for SymbolicOffset {
    /// Renders as in hand-written tables: `0`, `a`, `-a`, `2L-2a`, `1L+a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Self { lambda, alpha } = *self;
        let a_term = |f: &mut fmt::Formatter<'_>, lead: bool| -> fmt::Result {
            let sign = if alpha < 0 { "-" } else if lead { "" } else { "+" };
            match alpha.abs() {
                1 => write!(f, "{sign}a"),
                n => write!(f, "{sign}{n}a"),
            }
        };
        match (lambda, alpha) {
            (0, 0) => f.write_str("0"),
            (0, _) => a_term(f, true),
            (l, 0) => write!(f, "{l}L"),
            (l, _) => {
                write!(f, "{l}L")?;
                a_term(f, false)
            }
        }
    }
}

impl FromStr for SymbolicOffset {
    type Err = ModelError;

    /// Accepts the [`fmt::Display`] form, with `−` (U+2212) allowed for minus.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadToken(0, 0);
        let s: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        if s == "0" {
            return Ok(Self::ZERO);
        }
        let mut out = Self::ZERO;
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let unit_at = body.find(['L', 'a']).ok_or_else(bad)?;
            let coeff = match &body[..unit_at] {
                "" => 1,
                n => n.parse::<i64>().map_err(|_| bad())?,
            };
            if body.as_bytes()[unit_at] == b'L' {
                out.lambda += sign * coeff;
            } else {
                out.alpha += sign * coeff;
            }
            rest = &body[unit_at + 1..];
        }
        Ok(out)
    }
}

/// The `(A + 1) x B` grid of symbolic joint offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointGrid {
    rows: usize,
    cols: usize,
    offsets: Vec<SymbolicOffset>,
}

impl JointGrid {
    pub(crate) fn from_raw(rows: usize, cols: usize, offsets: Vec<SymbolicOffset>) -> Self {
        debug_assert_eq!(offsets.len(), rows * cols);
        Self { rows, cols, offsets }
    }

    pub(crate) fn as_slice(&self) -> &[SymbolicOffset] {
        &self.offsets
    }

    /// Joint rows, `A + 1`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> SymbolicOffset {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.offsets[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[SymbolicOffset] {
        &self.offsets[row * self.cols..(row + 1) * self.cols]
    }
}

impl fmt::Display for JointGrid {
    /// One joint row per line, tab-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            for (c, o) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str("\t")?;
                }
                write!(f, "{o}")?;
            }
        }
        Ok(())
    }
}

/// A signed slope sequence along one boundary; `+1` entries are `true`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeProfile {
    slopes: Vec<bool>,
}

impl EdgeProfile {
    pub fn from_bools(slopes: Vec<bool>) -> Self {
        Self { slopes }
    }

    /// Panics unless every entry is `+1` or `-1`.
    pub fn from_signs(signs: &[i8]) -> Self {
        Self {
            slopes: signs
                .iter()
                .map(|&s| match s {
                    1 => true,
                    -1 => false,
                    other => panic!("slope {other} is not +1 or -1"),
                })
                .collect(),
        }
    }

    /// The flat-back edge `+ - + - ...` of the given length.
    pub fn flat(len: usize) -> Self {
        Self { slopes: (0..len).map(|i| i % 2 == 0).collect() }
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn slopes(&self) -> &[bool] {
        &self.slopes
    }

    pub fn signs(&self) -> Vec<i64> {
        self.slopes.iter().map(|&b| if b { 1 } else { -1 }).collect()
    }

    pub fn is_flat(&self) -> bool {
        self.slopes.iter().enumerate().all(|(i, &b)| b == (i % 2 == 0))
    }

    /// Single-column encoding holding this edge.
    pub fn to_encoding(&self) -> Result<LatticeEncoding, ModelError> {
        LatticeEncoding::from_columns(std::slice::from_ref(&self.slopes))
    }
}

impl fmt::Display for EdgeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.slopes {
            f.write_str(if b { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for EdgeProfile {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let slopes = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' => Ok(false),
                other => Err(ModelError::BadEdgeCharacter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if slopes.is_empty() {
            return Err(ModelError::Empty);
        }
        Ok(Self { slopes })
    }
}

/// Integer pixel heights: `rows_r` pixels per layer, `layers_s` layers side by
/// side. Layer `s` is column `s` of the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightMap {
    rows: usize,
    layers: usize,
    heights: Vec<u32>,
}

impl HeightMap {
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self, ModelError> {
        let r = rows.len();
        let s = rows.first().map_or(0, |x| x.as_ref().len());
        if r == 0 || s == 0 {
            return Err(ModelError::Empty);
        }
        let mut heights = Vec::with_capacity(r * s);
        for (i, row) in rows.iter().enumerate() {
            if row.as_ref().len() != s {
                return Err(ModelError::RaggedRows(i + 1));
            }
            heights.extend_from_slice(row.as_ref());
        }
        Ok(Self { rows: r, layers: s, heights })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn get(&self, row: usize, layer: usize) -> u32 {
        assert!(row < self.rows && layer < self.layers, "index out of range");
        self.heights[row * self.layers + layer]
    }

    /// Pixel heights of one layer, top to bottom.
    pub fn layer(&self, layer: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, layer)).collect()
    }
}

impl fmt::Display for HeightMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.heights.chunks(self.layers).enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated non-negative integers, one pixel row per line.
/// Blank and `#` lines are skipped.
pub fn parse_heightmap(text: &str) -> Result<HeightMap, ModelError> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let r = rows.len() + 1;
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(j, tok)| match tok.parse::<i64>() {
                Ok(v) if v < 0 => Err(ModelError::NegativeHeight(r, j + 1)),
                Ok(v) => u32::try_from(v).map_err(|_| ModelError::BadToken(r, j + 1)),
                Err(_) => Err(ModelError::BadToken(r, j + 1)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    HeightMap::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_small_encodings() {
        let e = parse_encoding("2 2\n10\n01").unwrap();
        assert_eq!(e, LatticeEncoding::from_rows(&[[true, false], [false, true]]).unwrap());
        let one = parse_encoding("1 1\n1").unwrap();
        assert!(one.get(0, 0));
        assert_eq!(parse_encoding("2 2\n10\n0"), Err(ModelError::BadRowLength(2)));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_encoding("2 2\n1x\n01"), Err(ModelError::BadCharacter(1, 2)));
        assert_eq!(parse_encoding("2\n10\n01"), Err(ModelError::MalformedHeader));
        assert_eq!(parse_encoding("0 2\n"), Err(ModelError::MalformedHeader));
        assert_eq!(parse_encoding(""), Err(ModelError::MalformedHeader));
        assert_eq!(parse_encoding("2 2\n10"), Err(ModelError::MissingRows { expected: 2, found: 1 }));
        assert_eq!(parse_encoding("1 2\n10\n01"), Err(ModelError::TrailingData(1)));
    }

    #[test]
    fn comments_anywhere() {
        let e = parse_encoding("# top\n2 3\n# middle\n101\n\n010\n# end\n").unwrap();
        assert_eq!((e.rows(), e.cols()), (2, 3));
        assert!(e.get(0, 2) && e.get(1, 1));
    }

    #[test]
    fn serialize_matches_text() {
        let e = LatticeEncoding::from_rows(&[[true, false], [false, true]]).unwrap();
        assert_eq!(serialize_encoding(&e), "2 2\n10\n01");
        assert_eq!(serialize_encoding(&parse_encoding("1 1\n1").unwrap()), "1 1\n1");
    }

    #[test]
    fn heightmaps() {
        let m = parse_heightmap("0 1\n1 0").unwrap();
        assert_eq!((m.rows(), m.layers()), (2, 2));
        assert_eq!(m.layer(1), vec![1, 0]);
        assert!(parse_heightmap("0 0\n0 0").unwrap().layer(0).iter().all(|&h| h == 0));
        assert_eq!(parse_heightmap("1 -2"), Err(ModelError::NegativeHeight(1, 2)));
        assert_eq!(parse_heightmap("1 2\n3"), Err(ModelError::RaggedRows(2)));
        assert_eq!(parse_heightmap("1 z"), Err(ModelError::BadToken(1, 2)));
    }

    #[test]
    fn symbolic_display_and_parse() {
        let cases = [
            ((0, 0), "0"),
            ((0, 1), "a"),
            ((0, -1), "-a"),
            ((1, 0), "1L"),
            ((2, -2), "2L-2a"),
            ((1, 1), "1L+a"),
            ((3, 3), "3L+3a"),
        ];
        for ((l, a), text) in cases {
            let o = SymbolicOffset::new(l, a);
            assert_eq!(o.to_string(), text);
            assert_eq!(text.parse::<SymbolicOffset>().unwrap(), o);
        }
        assert_eq!("2L \u{2212} 2a".parse::<SymbolicOffset>().unwrap(), SymbolicOffset::new(2, -2));
        assert_eq!("L-a".parse::<SymbolicOffset>().unwrap(), SymbolicOffset::new(1, -1));
        assert!("2Q".parse::<SymbolicOffset>().is_err());
    }

    #[test]
    fn geometry_invariants() {
        assert!(GeometryParams::new(10.0, 20.0, 20.0, 0.0).is_ok());
        assert!(GeometryParams::new(0.0, 20.0, 20.0, 0.0).is_err());
        assert!(GeometryParams::new(10.0, 20.0, 20.0, 40.0).is_err());
        assert!(GeometryParams::new(10.0, 20.0, 20.0, -1.0).is_err());
        let g = GeometryParams::default();
        assert_eq!((g.s1, g.s2, g.crossbar_l, g.compression_c), (10.0, 20.0, 20.0, 0.0));
    }

    #[test]
    fn edge_text() {
        let e: EdgeProfile = "+-+-".parse().unwrap();
        assert!(e.is_flat());
        assert_eq!(e.to_string(), "+-+-");
        assert_eq!(e.signs(), vec![1, -1, 1, -1]);
        assert!("+-x".parse::<EdgeProfile>().is_err());
        assert!(!"++".parse::<EdgeProfile>().unwrap().is_flat());
    }

    #[test]
    fn mask_and_columns_agree() {
        let e = LatticeEncoding::from_mask(2, 3, 0b100_101).unwrap();
        let cols = [e.column(0), e.column(1), e.column(2)];
        assert_eq!(LatticeEncoding::from_columns(&cols).unwrap(), e);
        assert_eq!(e.flipped().flipped(), e);
        assert_eq!(e.rows_reversed().rows_reversed(), e);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn encoding_round_trip(mask in any::<u32>()) {
                let e = LatticeEncoding::from_mask(6, 4, mask as u64).unwrap();
                prop_assert_eq!(parse_encoding(&serialize_encoding(&e)).unwrap(), e);
            }

            #[test]
            fn heightmap_round_trip(rows in prop::collection::vec(prop::collection::vec(0u32..9, 3), 1..6)) {
                let m = HeightMap::from_rows(&rows).unwrap();
                prop_assert_eq!(parse_heightmap(&m.to_string()).unwrap(), m);
            }
        }
    }
}
