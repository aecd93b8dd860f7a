use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use starlattice::counting::{count_bruteforce, count_dp, valid_probability, CountMethod, CountRecord};
use starlattice::design::{approximate_profile, generate_lattice, heightmap_to_layers, letter_to_layers, validate_heightmap, DesignError, Font, GenerationMode, ProfilePolyline};
use starlattice::kinematics::{compressed_cell, Bias};
use starlattice::model::{parse_encoding, parse_heightmap, EdgeProfile, LatticeEncoding};
use starlattice::render::{render as draw, OutputKind, RenderSpec};
use starlattice::scaling::{dataset_from_counts, fit_scaling_with, parse_count_table, predict_count_rounded, reference, validate_fit, FitConfig, FitDataset, FitModel, FitReport, Stage2};
use starlattice::validity::{check_validity, compute_joint_offsets, numeric_offsets};

use crate::{Format, GeometryArgs, Method};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(e: impl Display) -> Self {
        Self { code: 2, message: e.to_string() }
    }

    pub fn negative(e: impl Display) -> Self {
        Self { code: 1, message: e.to_string() }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<LatticeEncoding, Failure> {
    parse_encoding(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Design errors that say "this shape is out of reach" are negative
/// answers; malformed input is a usage error.
fn design_failure(e: DesignError) -> Failure {
    match e {
        DesignError::BadPointsLine(_) | DesignError::BadFont(_) | DesignError::EmptyEdge => Failure::usage(e),
        _ => Failure::negative(e),
    }
}

pub fn validate(file: &Path) -> CmdResult {
    let report = check_validity(&load_lattice(file)?);
    if report.is_valid {
        println!("valid");
        return Ok(ExitCode::SUCCESS);
    }
    println!("invalid: {} crossbar violations", report.violations.len());
    for (row, col) in &report.violations {
        println!("{row} {col}");
    }
    Ok(ExitCode::from(1))
}

pub fn joints(file: &Path, theta: Option<f64>, geometry: &GeometryArgs) -> CmdResult {
    let grid = compute_joint_offsets(&load_lattice(file)?);
    match theta {
        None => println!("{grid}"),
        Some(theta) => {
            for row in numeric_offsets(&grid, &geometry.build(0.0)?, theta) {
                println!("{}", row.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join("\t"));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn count(rows: usize, cols: usize, method: Method) -> CmdResult {
    let brute = || count_bruteforce(rows, cols).map_err(Failure::usage);
    let dp = || count_dp(rows, cols).map_err(Failure::usage);
    match method {
        Method::Brute => println!("{}", brute()?.to_tsv()),
        Method::Dp => println!("{}", dp()?.to_tsv()),
        Method::Both => {
            let (b, d) = (brute()?, dp()?);
            println!("{}\n{}", b.to_tsv(), d.to_tsv());
            if b.valid_count != d.valid_count {
                return Err(Failure::negative(format!("methods disagree: {} vs {}", b.valid_count, d.valid_count)));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn self_computed_table() -> Result<FitDataset, Failure> {
    let sizes = reference::FIT.iter().chain(reference::VALIDATION.iter()).map(|&(a, b, _)| (a, b));
    let counts = sizes
        .map(|(a, b)| count_dp(a, b).map(|r| (a, b, r.valid_count)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    for (a, b, n) in &counts {
        eprintln!("{a}\t{b}\t{n}");
    }
    dataset_from_counts(&counts).map_err(Failure::usage)
}

pub fn fit(table: Option<&Path>) -> CmdResult {
    let data = match table {
        Some(path) => parse_count_table(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => self_computed_table()?,
    };
    let validation = data.validation();
    let fit_with = |stage2| fit_scaling_with(&data, &FitConfig { stage2, ..FitConfig::default() }).map_err(Failure::usage);
    let independent = fit_with(Stage2::Independent)?;
    let joint = fit_with(Stage2::Joint)?;
    let report = FitReport {
        models: vec![
            ("independent stage 2, k2 averaged", &independent, validate_fit(&independent, &validation)),
            ("joint stage 2, shared k2", &joint, validate_fit(&joint, &validation)),
        ],
    };
    print!("{report}");
    Ok(ExitCode::SUCCESS)
}

pub fn predict(rows: usize, cols: usize, (k1, k2, k3): (f64, f64, f64)) -> CmdResult {
    let model = FitModel::from_constants(k1, k2, k3);
    let record = CountRecord::new(rows, cols, predict_count_rounded(&model, rows, cols), CountMethod::Extrapolated);
    let p = valid_probability(rows, cols, &record).map_err(Failure::usage)?;
    println!("{}", record.to_tsv());
    println!("probability\t{:.6e}", p.approx);
    Ok(ExitCode::SUCCESS)
}

fn profile_edge(points: &Path, rows: Option<usize>, geometry: &GeometryArgs) -> Result<(EdgeProfile, f64, f64), Failure> {
    let polyline = ProfilePolyline::parse(&read(points)?).map_err(|e| match e {
        DesignError::BadPointsLine(_) => Failure::usage(format!("{}: {e}", points.display())),
        other => design_failure(other),
    })?;
    let rows = rows.unwrap_or(polyline.segment_count());
    let approx = approximate_profile(&polyline, rows, &geometry.build(0.0)?).map_err(design_failure)?;
    Ok((approx.edge, approx.compression_c, approx.offset_a))
}

pub fn profile(points: &Path, rows: Option<usize>, geometry: &GeometryArgs) -> CmdResult {
    let (edge, c, a) = profile_edge(points, rows, geometry)?;
    println!("edge: {edge}");
    println!("compression: {c:.6} mm");
    println!("offset: {a:.6} mm");
    Ok(ExitCode::SUCCESS)
}

pub fn generate(profile: Option<&Path>, edge: Option<&str>, rows: Option<usize>, mode: GenerationMode, out: Option<&Path>, geometry: &GeometryArgs) -> CmdResult {
    let edge = match (profile, edge) {
        (Some(points), _) => profile_edge(points, rows, geometry)?.0,
        (None, Some(text)) => text.parse::<EdgeProfile>().map_err(Failure::usage)?,
        (None, None) => return Err(Failure::usage("give --profile or --edge")),
    };
    let result = generate_lattice(&edge, mode).map_err(design_failure)?;
    let text = format!("{}\n", result.lattice);
    match out {
        Some(path) => {
            write(path, &text)?;
            println!("layers: {}", result.layer_count);
        }
        None => {
            print!("{text}");
            eprintln!("layers: {}", result.layer_count);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn render(file: &Path, theta: Option<f64>, compression: Option<f64>, format: Format, stroke: f64, scale: f64, out: Option<&Path>, geometry: &GeometryArgs) -> CmdResult {
    if !(scale > 0.0) {
        return Err(Failure::usage("--scale must be positive"));
    }
    let lattice = load_lattice(file)?;
    let geom = geometry.build(compression.unwrap_or(0.0))?;
    let theta = match theta {
        Some(t) => t,
        None => compressed_cell(&geom, Bias::Acute).map_err(Failure::negative)?.theta,
    };
    let kind = match format {
        Format::Svg => OutputKind::Svg,
        Format::Csv => OutputKind::Csv,
    };
    let opts = RenderSpec { theta, stroke_width: stroke, scale, kind };
    let doc = draw(&lattice, &geom, &opts).map_err(Failure::negative)?;
    match out {
        Some(path) => write(path, &doc)?,
        None => print!("{doc}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))
}

pub fn text(text: &str, out_dir: &Path, compression: f64, geometry: &GeometryArgs) -> CmdResult {
    let geom = geometry.build(compression)?;
    compressed_cell(&geom, Bias::Acute).map_err(Failure::usage)?;
    let font = Font::builtin();
    // fail on an unknown glyph before writing anything
    let letters = text.chars().filter(|c| !c.is_whitespace()).map(|ch| Ok((ch, letter_to_layers(ch, font)?))).collect::<Result<Vec<_>, DesignError>>().map_err(design_failure)?;
    create_dir(out_dir)?;
    let mut files = 0;
    for (ch, layers) in &letters {
        for (i, layer) in layers.iter().enumerate() {
            let g = generate_lattice(&layer.edge, GenerationMode::MinimizeSpread).map_err(design_failure)?;
            write(&out_dir.join(format!("{}_{i:02}.lat", ch.to_ascii_uppercase())), &format!("{}\n", g.lattice))?;
            files += 1;
        }
    }
    println!("{} glyphs, {files} layer files, compression {compression:.3} mm", letters.len());
    Ok(ExitCode::SUCCESS)
}

pub fn heightmap(file: &Path, out_dir: &Path, compression: f64, geometry: &GeometryArgs) -> CmdResult {
    let map = parse_heightmap(&read(file)?).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let violations = validate_heightmap(&map);
    if !violations.is_empty() {
        for v in &violations {
            println!("{v}");
        }
        return Err(Failure::negative(format!("{} in-layer height steps exceed one unit", violations.len())));
    }
    let geom = geometry.build(compression)?;
    let compiled = heightmap_to_layers(&map, &geom).map_err(design_failure)?;
    create_dir(out_dir)?;
    for (i, layer) in compiled.layers.iter().enumerate() {
        let g = generate_lattice(&layer.edge, GenerationMode::MinimizeSpread).map_err(design_failure)?;
        write(&out_dir.join(format!("layer_{i:02}.lat")), &format!("{}\n", g.lattice))?;
    }
    println!("{} layer files, compression {:.3} mm", compiled.layers.len(), compiled.compression_c);
    Ok(ExitCode::SUCCESS)
}
