use std::path::PathBuf;

use starlattice::model::{parse_encoding, serialize_encoding, GeometryParams, LatticeEncoding, SymbolicOffset};
use starlattice::validity::{check_validity, compute_joint_offsets, link_offset, numeric_offsets};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn joint_table(name: &str) -> Vec<Vec<SymbolicOffset>> {
    fixture(name)
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split('\t').map(|t| t.parse().unwrap()).collect())
        .collect()
}

fn lattice(name: &str) -> LatticeEncoding {
    parse_encoding(&fixture(name)).unwrap()
}

#[test]
fn invalid_lattice_reproduces_its_whole_table() {
    let grid = compute_joint_offsets(&lattice("calibration_invalid.lat"));
    for (r, row) in joint_table("calibration_invalid.joints").iter().enumerate() {
        assert_eq!(grid.row(r), &row[..], "joint row {r}");
    }
}

#[test]
fn valid_table_differs_only_at_the_misprint() {
    let grid = compute_joint_offsets(&lattice("calibration_valid.lat"));
    let table = joint_table("calibration_valid.joints");
    let mismatches: Vec<_> = (0..grid.rows()).flat_map(|r| (0..grid.cols()).map(move |c| (r, c))).filter(|&(r, c)| grid.get(r, c) != table[r][c]).collect();
    assert_eq!(mismatches, [(10, 1)]);
    assert_eq!(grid.get(10, 1).to_string(), "1L");
}

#[test]
fn violations_sit_in_the_middle_column_pair() {
    let report = check_validity(&lattice("calibration_invalid.lat"));
    assert_eq!(report.violations, [(3, 1), (5, 1), (7, 1)]);
    let grid = &report.joint_grid;
    for (r, c) in report.violations {
        let gap = grid.get(r, c + 1) - grid.get(r, c);
        assert_eq!(gap.lambda, 1);
        assert_ne!(gap.alpha, 0);
    }
}

#[test]
fn numeric_offsets_evaluate_the_table() {
    let geom = GeometryParams::default();
    let theta = std::f64::consts::FRAC_PI_3;
    let a = link_offset(geom.s2, theta);
    for name in ["calibration_valid", "calibration_invalid"] {
        let grid = compute_joint_offsets(&lattice(&format!("{name}.lat")));
        let x = numeric_offsets(&grid, &geom, theta);
        for r in 0..grid.rows() {
            for c in 0..grid.cols() {
                let want = grid.get(r, c).evaluate(geom.crossbar_l, a);
                assert!((x[r][c] - want).abs() < 1e-9, "{name} ({r},{c})");
            }
        }
    }
}

#[test]
fn fixtures_round_trip_through_text() {
    for name in ["calibration_valid.lat", "calibration_invalid.lat"] {
        let enc = lattice(name);
        assert_eq!(parse_encoding(&serialize_encoding(&enc)).unwrap(), enc);
    }
}
