//! Symbolic joint offsets and the crossbar-length check.
//!
//! A crossbar joins columns `c` and `c + 1` at joint row `r` exactly when
//! `r + c` is even. The top row of joints is laid out first: across a crossbar
//! the offset grows by `L`; across a gap it is fixed by the crossbar one row
//! below, which gives `L + d(0, c) a - d(0, c + 1) a`. Each column then
//! accumulates `d(r, c) a` downward. The encoding is valid when every
//! crossbar spans exactly `L`, with no residual multiple of `a`. Because the
//! check never substitutes a value for `a`, one verdict covers every
//! compression angle.

use crate::model::{GeometryParams, JointGrid, LatticeEncoding, SymbolicOffset};

/// Outcome of [`check_validity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub is_valid: bool,
    /// `(joint_row, left_col)` of every crossbar whose span is not exactly `L`,
    /// ordered by column, then row.
    pub violations: Vec<(usize, usize)>,
    pub joint_grid: JointGrid,
}

/// True when a crossbar joins columns `col` and `col + 1` at joint row `row`.
pub fn has_crossbar(row: usize, col: usize) -> bool {
    (row + col) % 2 == 0
}

fn crossbar_with_phase(row: usize, col: usize, phase: usize) -> bool {
    (row + col + phase) % 2 == 0
}

/// Fills `out` (row-major, `(rows + 1) x cols`) from row-major bits.
fn fill_offsets(rows: usize, cols: usize, bits: &[bool], phase: usize, out: &mut [SymbolicOffset]) {
    let d = |r: usize, c: usize| if bits[r * cols + c] { 1 } else { -1 };
    out[0] = SymbolicOffset::ZERO;
    for c in 0..cols.saturating_sub(1) {
        let step = if crossbar_with_phase(0, c, phase) {
            SymbolicOffset::L
        } else {
            SymbolicOffset::new(1, d(0, c) - d(0, c + 1))
        };
        out[c + 1] = out[c] + step;
    }
    for r in 0..rows {
        for c in 0..cols {
            out[(r + 1) * cols + c] = out[r * cols + c] + SymbolicOffset::new(0, d(r, c));
        }
    }
}

fn for_each_violation(rows: usize, cols: usize, phase: usize, grid: &[SymbolicOffset], mut f: impl FnMut(usize, usize) -> bool) {
    for c in 0..cols.saturating_sub(1) {
        for r in 0..=rows {
            if crossbar_with_phase(r, c, phase) && grid[r * cols + c + 1] - grid[r * cols + c] != SymbolicOffset::L && !f(r, c) {
                return;
            }
        }
    }
}

/// Symbolic offsets of every joint.
pub fn compute_joint_offsets(enc: &LatticeEncoding) -> JointGrid {
    offsets_with_phase(enc, 0)
}

fn offsets_with_phase(enc: &LatticeEncoding, phase: usize) -> JointGrid {
    let (a, b) = (enc.rows(), enc.cols());
    let mut out = vec![SymbolicOffset::ZERO; (a + 1) * b];
    fill_offsets(a, b, enc.bits(), phase, &mut out);
    JointGrid::from_raw(a + 1, b, out)
}

/// Checks every crossbar and reports all failures.
pub fn check_validity(enc: &LatticeEncoding) -> ValidityReport {
    check_with_phase(enc, 0)
}

/// As [`check_validity`] with crossbars at `r + c + phase` even. Used to test
/// symmetries that shift the parity, such as reversing an odd number of rows.
pub(crate) fn check_with_phase(enc: &LatticeEncoding, phase: usize) -> ValidityReport {
    let grid = offsets_with_phase(enc, phase);
    let (a, b) = (enc.rows(), enc.cols());
    let mut violations = Vec::new();
    for_each_violation(a, b, phase, grid.as_slice(), |r, c| {
        violations.push((r, c));
        true
    });
    ValidityReport { is_valid: violations.is_empty(), violations, joint_grid: grid }
}

/// Allocation-free verdicts for many encodings of one size. Runs the same
/// propagation and crossbar scan as [`check_validity`].
#[derive(Debug, Clone)]
pub struct Validator {
    rows: usize,
    cols: usize,
    scratch: Vec<SymbolicOffset>,
    bits: Vec<bool>,
}

impl Validator {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, scratch: vec![SymbolicOffset::ZERO; (rows + 1) * cols], bits: vec![false; rows * cols] }
    }

    /// Verdict for row-major `bits`.
    pub fn is_valid_bits(&mut self, bits: &[bool]) -> bool {
        assert_eq!(bits.len(), self.rows * self.cols, "bit count does not match the validator size");
        fill_offsets(self.rows, self.cols, bits, 0, &mut self.scratch);
        let mut ok = true;
        for_each_violation(self.rows, self.cols, 0, &self.scratch, |_, _| {
            ok = false;
            false
        });
        ok
    }

    /// Verdict for the encoding packed into `mask` (bit `r * cols + c`).
    pub fn is_valid_mask(&mut self, mask: u64) -> bool {
        let mut bits = std::mem::take(&mut self.bits);
        for (i, b) in bits.iter_mut().enumerate() {
            *b = mask >> i & 1 == 1;
        }
        let ok = self.is_valid_bits(&bits);
        self.bits = bits;
        ok
    }
}

/// Evaluates a symbolic grid at joint angle `theta`, giving x in millimetres.
pub fn numeric_offsets(grid: &JointGrid, geom: &GeometryParams, theta: f64) -> Vec<Vec<f64>> {
    let a = link_offset(geom.s2, theta);
    (0..grid.rows()).map(|r| grid.row(r).iter().map(|o| o.evaluate(geom.crossbar_l, a)).collect()).collect()
}

/// `s2 * cos(theta)`, computed as a sine so that `theta = pi / 2` gives an
/// exact zero.
pub fn link_offset(s2: f64, theta: f64) -> f64 {
    s2 * (std::f64::consts::FRAC_PI_2 - theta).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: place joints numerically, then measure every
    /// crossbar. Shares nothing with the symbolic code.
    fn numeric_verdict(enc: &LatticeEncoding, l: f64, a: f64) -> bool {
        let (rows, cols) = (enc.rows(), enc.cols());
        let mut x = vec![vec![0.0f64; cols]; rows + 1];
        for c in 1..cols {
            // crossbar at row 0 when c - 1 is even, otherwise through row 1
            x[0][c] = if (c - 1) % 2 == 0 {
                x[0][c - 1] + l
            } else {
                x[0][c - 1] + enc.sign(0, c - 1) as f64 * a + l - enc.sign(0, c) as f64 * a
            };
        }
        for r in 0..rows {
            for c in 0..cols {
                x[r + 1][c] = x[r][c] + enc.sign(r, c) as f64 * a;
            }
        }
        (0..=rows).all(|r| (0..cols.saturating_sub(1)).filter(|c| (r + c) % 2 == 0).all(|c| ((x[r][c + 1] - x[r][c]) - l).abs() < 1e-9))
    }

    #[test]
    fn single_link() {
        let g = compute_joint_offsets(&LatticeEncoding::from_rows(&[[true]]).unwrap());
        assert_eq!(g.get(0, 0), SymbolicOffset::ZERO);
        assert_eq!(g.get(1, 0), SymbolicOffset::new(0, 1));
    }

    #[test]
    fn single_column_is_prefix_sum() {
        let bits = [true, false, false, true, true];
        let enc = LatticeEncoding::from_columns(&[bits]).unwrap();
        let g = compute_joint_offsets(&enc);
        let mut acc = 0;
        for (r, &b) in bits.iter().enumerate() {
            acc += if b { 1 } else { -1 };
            assert_eq!(g.get(r + 1, 0), SymbolicOffset::new(0, acc));
        }
        assert!(check_validity(&enc).is_valid);
    }

    #[test]
    fn tiled_alternating_columns_are_valid() {
        for a in 1..=7 {
            for b in 1..=6 {
                let cols: Vec<Vec<bool>> = (0..b).map(|_| (0..a).map(|r| r % 2 == 0).collect()).collect();
                let enc = LatticeEncoding::from_columns(&cols).unwrap();
                assert!(check_validity(&enc).is_valid);
                assert!(numeric_verdict(&enc, 20.0, 10.0) && numeric_verdict(&enc, 20.0, 20.0 * (0.4 * std::f64::consts::PI).cos()));
            }
        }
    }

    #[test]
    fn numeric_offsets_examples() {
        let grid = JointGrid::from_raw(1, 1, vec![SymbolicOffset::new(2, -2)]);
        let g = GeometryParams::default();
        let x = numeric_offsets(&grid, &g, std::f64::consts::FRAC_PI_3);
        assert!((x[0][0] - 20.0).abs() < 1e-12);
        let x = numeric_offsets(&grid, &g, std::f64::consts::FRAC_PI_2);
        assert_eq!(x[0][0], 40.0);
    }

    #[test]
    fn validator_agrees_with_report() {
        for mask in 0..(1u64 << 12) {
            let enc = LatticeEncoding::from_mask(4, 3, mask).unwrap();
            assert_eq!(Validator::new(4, 3).is_valid_mask(mask), check_validity(&enc).is_valid);
        }
    }

    #[test]
    fn row_bands_inherit_validity() {
        for a in 1..=4 {
            for b in 1..=4 {
                let mut v = Validator::new(a, b);
                for mask in 0..(1u64 << (a * b)) {
                    if !v.is_valid_mask(mask) {
                        continue;
                    }
                    let enc = LatticeEncoding::from_mask(a, b, mask).unwrap();
                    for start in 0..a {
                        for end in start + 1..=a {
                            let band = enc.row_band(start, end).unwrap();
                            assert!(check_with_phase(&band, start % 2).is_valid, "{enc:?} rows {start}..{end}");
                        }
                    }
                }
            }
        }
    }

    fn encoding() -> impl Strategy<Value = LatticeEncoding> {
        (1usize..=8, 1usize..=6).prop_flat_map(|(a, b)| prop::collection::vec(any::<bool>(), a * b).prop_map(move |bits| LatticeEncoding::from_bits(a, b, bits).unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn verdict_is_angle_independent(enc in encoding()) {
            let s2 = 20.0;
            let symbolic = check_validity(&enc).is_valid;
            for theta in [std::f64::consts::FRAC_PI_3, 0.4 * std::f64::consts::PI] {
                prop_assert_eq!(numeric_verdict(&enc, 20.0, s2 * theta.cos()), symbolic);
            }
        }

        #[test]
        fn bit_flip_negates_alpha(enc in encoding()) {
            let g = compute_joint_offsets(&enc);
            let f = compute_joint_offsets(&enc.flipped());
            for r in 0..g.rows() {
                for c in 0..g.cols() {
                    prop_assert_eq!(f.get(r, c).alpha, -g.get(r, c).alpha);
                    prop_assert_eq!(f.get(r, c).lambda, g.get(r, c).lambda);
                }
            }
            prop_assert_eq!(check_validity(&enc.flipped()).is_valid, check_validity(&enc).is_valid);
        }

        #[test]
        fn vertical_flip_preserves_verdict(enc in encoding()) {
            let reversed = check_with_phase(&enc.rows_reversed(), enc.rows() % 2).is_valid;
            prop_assert_eq!(reversed, check_validity(&enc).is_valid);
        }

        #[test]
        fn violations_iff_invalid(enc in encoding()) {
            let rep = check_validity(&enc);
            prop_assert_eq!(rep.is_valid, rep.violations.is_empty());
            prop_assert_eq!(rep.joint_grid.get(0, 0), SymbolicOffset::ZERO);
        }
    }
}
