//! Counting valid encodings.
//!
//! [`count_bruteforce`] runs [`check_validity`](crate::validity::check_validity)'s
//! propagation on every bit matrix and is the reference. [`count_dp`] is an
//! exact accelerator that never looks at joint offsets at all, which is what
//! makes comparing the two meaningful.
//!
//! The accelerator rests on one observation. Between columns `c` and `c + 1`,
//! crossbars sit at joint rows `r` with `r + c` even. Two consecutive crossbars
//! bound a pair of links in each column, and the crossbar below keeps its
//! length only if both columns moved by the same amount over that pair:
//! `d(r, c) + d(r + 1, c) = d(r, c + 1) + d(r + 1, c + 1)`. Links above the
//! first crossbar or below the last one are unconstrained. So a column only
//! needs to know its tuple of pair sums, its *signature*, and columns can be
//! grouped by signature: `3^(A/2)` totals instead of `2^A` counters.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::model::LatticeEncoding;
use crate::validity::Validator;

/// Largest `A * B` that [`count_bruteforce`] accepts by default.
pub const DEFAULT_BRUTEFORCE_LIMIT: usize = 28;
/// Largest `A` that [`count_dp`] accepts.
pub const DP_MAX_ROWS: usize = 24;
/// Largest `A * B` for which [`list_valid`] will materialise encodings.
pub const LISTING_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{rows}x{cols} is beyond the {method} limit; {hint}")]
    SizeLimitExceeded { rows: usize, cols: usize, method: CountMethod, hint: &'static str },
    #[error("dimensions must be at least 1x1")]
    EmptyDimensions,
    #[error("count is for {found_rows}x{found_cols}, not {rows}x{cols}")]
    DimensionMismatch { rows: usize, cols: usize, found_rows: usize, found_cols: usize },
}

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    BruteForce,
    DynamicProgram,
    /// Rounded output of a fitted scaling law, not an enumeration.
    Extrapolated,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::BruteForce => "brute-force",
            CountMethod::DynamicProgram => "dynamic-program",
            CountMethod::Extrapolated => "extrapolated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    pub rows_a: usize,
    pub cols_b: usize,
    pub valid_count: BigUint,
    pub total_count: BigUint,
    pub method: CountMethod,
}

impl CountRecord {
    pub fn new(rows_a: usize, cols_b: usize, valid_count: BigUint, method: CountMethod) -> Self {
        let total_count = total_encodings(rows_a, cols_b);
        Self { rows_a, cols_b, valid_count, total_count, method }
    }

    /// `A<TAB>B<TAB>count<TAB>method`.
    pub fn to_tsv(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.rows_a, self.cols_b, self.valid_count, self.method)
    }
}

/// `2^(A * B)`.
pub fn total_encodings(rows_a: usize, cols_b: usize) -> BigUint {
    BigUint::one() << (rows_a * cols_b)
}

fn check_dims(rows_a: usize, cols_b: usize) -> Result<(), CountError> {
    if rows_a == 0 || cols_b == 0 {
        Err(CountError::EmptyDimensions)
    } else {
        Ok(())
    }
}

/// Counts valid encodings by checking every one, with the default size guard.
pub fn count_bruteforce(rows_a: usize, cols_b: usize) -> Result<CountRecord, CountError> {
    count_bruteforce_with_limit(rows_a, cols_b, DEFAULT_BRUTEFORCE_LIMIT)
}

/// Counts valid encodings by checking every one. `limit` caps `A * B` and may
/// not exceed 63.
pub fn count_bruteforce_with_limit(rows_a: usize, cols_b: usize, limit: usize) -> Result<CountRecord, CountError> {
    check_dims(rows_a, cols_b)?;
    let cells = rows_a * cols_b;
    if cells > limit.min(63) {
        return Err(CountError::SizeLimitExceeded { rows: rows_a, cols: cols_b, method: CountMethod::BruteForce, hint: "use the dynamic program" });
    }
    let total = 1u64 << cells;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let valid: u64 = (0..chunks)
        .into_par_iter()
        .map_init(
            || Validator::new(rows_a, cols_b),
            |v, chunk| {
                let end = ((chunk + 1) * CHUNK).min(total);
                (chunk * CHUNK..end).filter(|&m| v.is_valid_mask(m)).count() as u64
            },
        )
        .sum();
    Ok(CountRecord::new(rows_a, cols_b, BigUint::from(valid), CountMethod::BruteForce))
}

/// Every valid encoding of the given size, in mask order. Test utility, only
/// for `A * B <= 20`.
pub fn list_valid(rows_a: usize, cols_b: usize) -> Result<Vec<LatticeEncoding>, CountError> {
    check_dims(rows_a, cols_b)?;
    if rows_a * cols_b > LISTING_LIMIT {
        return Err(CountError::SizeLimitExceeded { rows: rows_a, cols: cols_b, method: CountMethod::BruteForce, hint: "listing is limited to A*B <= 20" });
    }
    let mut v = Validator::new(rows_a, cols_b);
    Ok((0..1u64 << (rows_a * cols_b))
        .filter(|&m| v.is_valid_mask(m))
        .map(|m| LatticeEncoding::from_mask(rows_a, cols_b, m).expect("dimensions checked"))
        .collect())
}

/// Base-3 signature of column `q` (bit `r` = row `r`) for pairs starting at
/// rows of the given parity.
fn signature(q: u32, rows: usize, parity: usize) -> usize {
    let mut sig = 0;
    let mut r = parity;
    while r + 2 <= rows {
        // digit 0, 1, 2 for pair sums -2, 0, +2
        let digit = (q >> r & 1) + (q >> (r + 1) & 1);
        sig = sig * 3 + digit as usize;
        r += 2;
    }
    sig
}

fn signature_space(rows: usize, parity: usize) -> usize {
    let pairs = if rows >= parity + 2 { (rows - parity) / 2 } else { 0 };
    3usize.pow(pairs as u32)
}

/// Sums `weight(q)` into bucket `signature(q, rows, parity)` over all columns.
fn bucket_by_signature(rows: usize, parity: usize, weight: impl Fn(u32) -> Option<BigUint> + Sync) -> Vec<BigUint> {
    let size = signature_space(rows, parity);
    let states = 1u64 << rows;
    const CHUNK: u64 = 1 << 12;
    (0..states.div_ceil(CHUNK))
        .into_par_iter()
        .fold(
            || vec![BigUint::zero(); size],
            |mut acc, chunk| {
                for q in chunk * CHUNK..((chunk + 1) * CHUNK).min(states) {
                    if let Some(w) = weight(q as u32) {
                        acc[signature(q as u32, rows, parity)] += w;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![BigUint::zero(); size],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Counts valid encodings with the column-signature dynamic program.
pub fn count_dp(rows_a: usize, cols_b: usize) -> Result<CountRecord, CountError> {
    check_dims(rows_a, cols_b)?;
    if rows_a > DP_MAX_ROWS {
        return Err(CountError::SizeLimitExceeded { rows: rows_a, cols: cols_b, method: CountMethod::DynamicProgram, hint: "A must be at most 24; the count is symmetric, so try swapping A and B" });
    }
    if cols_b == 1 {
        return Ok(CountRecord::new(rows_a, 1, total_encodings(rows_a, 1), CountMethod::DynamicProgram));
    }
    let one = BigUint::one();
    // totals[s]: ways to fill columns 0..=c whose last column has signature s
    // with respect to the pair (c, c + 1)
    let mut totals = bucket_by_signature(rows_a, 0, |_| Some(one.clone()));
    for c in 1..cols_b - 1 {
        let (prev, cur) = ((c - 1) % 2, c % 2);
        let t = &totals;
        totals = bucket_by_signature(rows_a, cur, |q| {
            let w = &t[signature(q, rows_a, prev)];
            (!w.is_zero()).then(|| w.clone())
        });
    }
    let last = (cols_b - 2) % 2;
    let valid: BigUint = (0..1u64 << rows_a)
        .into_par_iter()
        .map(|q| totals[signature(q as u32, rows_a, last)].clone())
        .reduce(BigUint::zero, |a, b| a + b);
    Ok(CountRecord::new(rows_a, cols_b, valid, CountMethod::DynamicProgram))
}

/// A count as a fraction of all `2^(A * B)` encodings.
#[derive(Debug, Clone, PartialEq)]
pub struct Probability {
    pub exact: BigRational,
    pub approx: f64,
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:.6e})", self.exact, self.approx)
    }
}

/// `valid_count / 2^(A * B)`.
pub fn valid_probability(rows_a: usize, cols_b: usize, count: &CountRecord) -> Result<Probability, CountError> {
    if count.rows_a != rows_a || count.cols_b != cols_b {
        return Err(CountError::DimensionMismatch { rows: rows_a, cols: cols_b, found_rows: count.rows_a, found_cols: count.cols_b });
    }
    let exact = BigRational::new(BigInt::from(count.valid_count.clone()), BigInt::from(total_encodings(rows_a, cols_b)));
    let approx = exact.to_f64().unwrap_or(f64::NAN);
    Ok(Probability { exact, approx })
}

/// Encodings reachable when every row shares one joint angle: `2^B`.
pub fn count_arrowhead(rows_a: usize, cols_b: usize) -> BigUint {
    let _ = rows_a;
    BigUint::one() << cols_b
}

/// Degrees of freedom of an `N x M` cell lattice at the singular state.
pub fn dof_at_singularity(cells_n: u64, cells_m: u64) -> u64 {
    cells_n * (cells_m + 1)
}

/// `(linkages, actuators)` for an `N x M` cell lattice with one biasing
/// actuator per pair of linkages.
pub fn programming_elements(cells_n: u64, cells_m: u64) -> (u64, u64) {
    let linkages = 2 * cells_n * (cells_m + 1);
    (linkages, linkages / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_brute_force_counts() {
        assert_eq!(count_bruteforce(1, 1).unwrap().valid_count, n(2));
        assert_eq!(count_bruteforce(2, 2).unwrap().valid_count, n(6));
        assert_eq!(count_bruteforce(2, 4).unwrap().valid_count, n(36));
        assert_eq!(count_bruteforce(4, 2).unwrap().valid_count, n(36));
        assert_eq!(count_bruteforce(4, 4).unwrap().valid_count, n(486));
    }

    #[test]
    fn dp_matches_known_values() {
        assert_eq!(count_dp(4, 6).unwrap().valid_count, n(6642));
        assert_eq!(count_dp(6, 6).unwrap().valid_count, n(210924));
        assert_eq!(count_dp(6, 8).unwrap().valid_count, n(6730128));
        assert_eq!(count_dp(3, 3).unwrap().valid_count, count_bruteforce(3, 3).unwrap().valid_count);
    }

    #[test]
    fn dp_single_row_and_column() {
        for k in 1..=10 {
            assert_eq!(count_dp(1, k).unwrap().valid_count, n(1 << k));
            assert_eq!(count_dp(k, 1).unwrap().valid_count, n(1 << k));
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(count_bruteforce(6, 6), Err(CountError::SizeLimitExceeded { .. })));
        assert!(count_bruteforce_with_limit(2, 3, 5).is_err());
        assert!(matches!(count_dp(25, 2), Err(CountError::SizeLimitExceeded { .. })));
        assert_eq!(count_dp(0, 2), Err(CountError::EmptyDimensions));
        assert!(list_valid(5, 5).is_err());
    }

    #[test]
    fn listing_agrees_with_count() {
        let listed = list_valid(3, 4).unwrap();
        assert_eq!(BigUint::from(listed.len()), count_bruteforce(3, 4).unwrap().valid_count);
        assert!(listed.iter().all(|e| crate::validity::check_validity(e).is_valid));
    }

    #[test]
    fn probability() {
        let rec = count_bruteforce(2, 2).unwrap();
        let p = valid_probability(2, 2, &rec).unwrap();
        assert_eq!(p.exact, BigRational::new(BigInt::from(3), BigInt::from(8)));
        assert_eq!(p.approx, 0.375);
        assert!(valid_probability(2, 3, &rec).is_err());
        let all = CountRecord::new(3, 1, n(8), CountMethod::DynamicProgram);
        assert_eq!(valid_probability(3, 1, &all).unwrap().approx, 1.0);
    }

    #[test]
    fn extrapolated_probability() {
        let rec = CountRecord::new(10, 10, n(5_624_380_000_000), CountMethod::Extrapolated);
        let p = valid_probability(10, 10, &rec).unwrap().approx;
        assert!((p / 4.4367e-18 - 1.0).abs() < 1e-3, "{p}");
    }

    #[test]
    fn closed_forms() {
        assert_eq!(count_arrowhead(6, 3), n(8));
        assert_eq!(count_arrowhead(9, 1), n(2));
        assert!(count_arrowhead(6, 3) < total_encodings(6, 3));
        assert_eq!(dof_at_singularity(1, 1), 2);
        assert_eq!(dof_at_singularity(10, 10), 110);
        assert_eq!(dof_at_singularity(5, 5), 30);
        assert_eq!(programming_elements(1, 1), (4, 2));
        assert_eq!(programming_elements(3, 3), (24, 12));
    }

    #[test]
    fn tsv_row() {
        assert_eq!(count_dp(4, 6).unwrap().to_tsv(), "4\t6\t6642\tdynamic-program");
    }
}
