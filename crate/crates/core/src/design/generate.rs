//! Extending an edge into a full lattice that ends in a flat back.
//!
//! Work in joint offsets (multiples of `a`) one column at a time. Between
//! columns `c` and `c + 1` the crossbar rows pin the new column's joints to
//! the old ones, so only the joints in between are free. A free joint whose
//! two pinned neighbours differ has exactly one choice, their mean, and its
//! cell is a shear cell. Otherwise the joint steps one unit toward a target
//! offset: the midpoint of the old column's range ([`GenerationMode::MinimizeSpread`])
//! or its mean ([`GenerationMode::MinimizeMean`]). Repeating this pulls the
//! column straight until it reads `1, 0, 1, 0, ...`.
//!
//! One special case: a column that already alternates but starts with `0`
//! would alternate forever under the rule above, so for that column the free
//! joints step away from the target instead, which lands on the flat back in
//! one move.

use std::fmt;

use super::DesignError;
use crate::model::{EdgeProfile, LatticeEncoding};
use crate::validity::check_validity;

/// Target used when a free joint has a choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenerationMode {
    /// Aim for the middle of the old column's offset range.
    #[default]
    MinimizeSpread,
    /// Aim for the old column's mean offset.
    MinimizeMean,
}

impl fmt::Display for GenerationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MinimizeSpread => "spread",
            Self::MinimizeMean => "mean",
        })
    }
}

impl std::str::FromStr for GenerationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spread" => Ok(Self::MinimizeSpread),
            "mean" => Ok(Self::MinimizeMean),
            other => Err(format!("unknown mode {other:?}; expected spread or mean")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationResult {
    pub lattice: LatticeEncoding,
    /// Number of columns, the edge included.
    pub layer_count: usize,
    pub mode: GenerationMode,
}

/// Joint offsets down a column, starting from 0.
pub(crate) fn joint_alphas(bits: &[bool]) -> Vec<i64> {
    let mut out = Vec::with_capacity(bits.len() + 1);
    out.push(0);
    for &b in bits {
        out.push(out.last().unwrap() + if b { 1 } else { -1 });
    }
    out
}

fn is_flat_back(bits: &[bool]) -> bool {
    bits.iter().enumerate().all(|(i, &b)| b == (i % 2 == 0))
}

fn alternates(bits: &[bool]) -> bool {
    bits.windows(2).all(|w| w[0] != w[1])
}

/// Column budget before giving up: four per unit of offset range, plus the
/// edge length.
pub fn max_columns(edge: &EdgeProfile) -> usize {
    let alphas = joint_alphas(edge.slopes());
    let span = alphas.iter().max().unwrap() - alphas.iter().min().unwrap();
    4 * span as usize + edge.len()
}

/// Appends columns to `edge` until the last one is the flat back.
pub fn generate_lattice(edge: &EdgeProfile, mode: GenerationMode) -> Result<GenerationResult, DesignError> {
    if edge.is_empty() {
        return Err(DesignError::EmptyEdge);
    }
    let rows = edge.len();
    let limit = max_columns(edge);
    let mut columns = vec![edge.slopes().to_vec()];
    let mut alphas = joint_alphas(edge.slopes());

    while !is_flat_back(columns.last().unwrap()) {
        if columns.len() >= limit {
            return Err(DesignError::GenerationDiverged { columns: columns.len() });
        }
        let c = columns.len() - 1;
        let target = match mode {
            GenerationMode::MinimizeSpread => (alphas.iter().max().unwrap() + alphas.iter().min().unwrap()) as f64 / 2.0,
            GenerationMode::MinimizeMean => alphas.iter().sum::<i64>() as f64 / alphas.len() as f64,
        };
        let away = alternates(columns.last().unwrap());

        let mut next = alphas.clone();
        for r in (0..=rows).filter(|r| (r + c) % 2 == 1) {
            let up = (r > 0).then(|| alphas[r - 1]);
            let down = (r < rows).then(|| alphas[r + 1]);
            next[r] = match (up, down) {
                (Some(u), Some(d)) if u != d => (u + d) / 2,
                (Some(v), _) | (None, Some(v)) => {
                    // ties step up, the first link of the pair turning positive
                    let toward_lower = (v as f64) > target;
                    if toward_lower != away {
                        v - 1
                    } else {
                        v + 1
                    }
                }
                (None, None) => unreachable!("a column has at least two joints"),
            };
        }
        columns.push(next.windows(2).map(|w| w[1] > w[0]).collect());
        alphas = next;
    }

    let lattice = LatticeEncoding::from_columns(&columns).map_err(|e| DesignError::InvalidIntermediate(e.to_string()))?;
    let report = check_validity(&lattice);
    if !report.is_valid {
        return Err(DesignError::InvalidIntermediate(format!("generated lattice has crossbar violations at {:?}", report.violations)));
    }
    Ok(GenerationResult { layer_count: columns.len(), lattice, mode })
}
