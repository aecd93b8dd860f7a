//! `starlattice`: check, count, fit, design and draw programmable lattices.
//!
//! Exit status is 0 on success, 1 when the answer is negative (an invalid
//! lattice, a failed check, a profile the lattice cannot reach) and 2 for
//! usage and I/O errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use starlattice::design::GenerationMode;
use starlattice::model::GeometryParams;

#[derive(Parser)]
#[command(name = "starlattice", version, about = "Programmable reentrant-honeycomb lattices")]
struct Cli {
    /// Worker threads for counting. Defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct GeometryArgs {
    /// Crossbar half-width s1, mm.
    #[arg(long, default_value_t = 10.0)]
    s1: f64,
    /// Vertical link length s2, mm.
    #[arg(long, default_value_t = 20.0)]
    s2: f64,
    /// Crossbar length L, mm.
    #[arg(long = "crossbar", default_value_t = 20.0)]
    crossbar: f64,
}

impl GeometryArgs {
    pub fn build(&self, compression: f64) -> Result<GeometryParams, commands::Failure> {
        GeometryParams::new(self.s1, self.s2, self.crossbar, compression).map_err(commands::Failure::usage)
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Brute,
    Dp,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Svg,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Spread,
    Mean,
}

impl From<Mode> for GenerationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Spread => GenerationMode::MinimizeSpread,
            Mode::Mean => GenerationMode::MinimizeMean,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that every crossbar of an encoding closes.
    Validate { file: PathBuf },
    /// Print the symbolic joint offsets of an encoding.
    Joints {
        file: PathBuf,
        /// Evaluate the offsets at this joint angle (radians).
        #[arg(long)]
        theta: Option<f64>,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Count the valid A x B encodings.
    Count {
        rows: usize,
        cols: usize,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
    },
    /// Fit the scaling law to a table of counts.
    Fit {
        /// Whitespace-separated `A B count [fit|validation|skip]` lines.
        #[arg(long, conflicts_with = "self_compute", required_unless_present = "self_compute")]
        table: Option<PathBuf>,
        /// Count the standard sizes exactly, then fit.
        #[arg(long)]
        self_compute: bool,
    },
    /// Predict a count from the scaling law.
    Predict {
        rows: usize,
        cols: usize,
        #[arg(long, default_value_t = 0.2989)]
        k1: f64,
        #[arg(long, default_value_t = 0.6924)]
        k2: f64,
        #[arg(long, default_value_t = -1.3831, allow_hyphen_values = true)]
        k3: f64,
    },
    /// Approximate a drawn profile with an edge.
    Profile {
        points: PathBuf,
        /// Number of slices; defaults to the number of segments.
        #[arg(long)]
        rows: Option<usize>,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Grow an edge into a full lattice ending in a flat back.
    Generate {
        #[arg(long, conflicts_with = "edge", required_unless_present = "edge")]
        profile: Option<PathBuf>,
        /// Edge as `+`/`-` characters.
        #[arg(long, allow_hyphen_values = true)]
        edge: Option<String>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Spread)]
        mode: Mode,
        /// Where to write the lattice; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Draw a lattice at a joint angle or compression.
    Render {
        file: PathBuf,
        #[arg(long, conflicts_with = "compression", required_unless_present = "compression")]
        theta: Option<f64>,
        /// Compression c in mm; the angle follows from it.
        #[arg(long)]
        compression: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// Stroke width, mm.
        #[arg(long, default_value_t = 1.0)]
        stroke: f64,
        /// Output units per mm.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Compile text into one lattice file per layer.
    Text {
        text: String,
        #[arg(long)]
        out_dir: PathBuf,
        /// Compression at which the letters show, mm.
        #[arg(long, default_value_t = 4.0)]
        compression: f64,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Compile a height map into one lattice file per layer.
    Heightmap {
        file: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 4.0)]
        compression: f64,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Joints { file, theta, geometry } => commands::joints(&file, theta, &geometry),
        Command::Count { rows, cols, method } => commands::count(rows, cols, method),
        Command::Fit { table, self_compute: _ } => commands::fit(table.as_deref()),
        Command::Predict { rows, cols, k1, k2, k3 } => commands::predict(rows, cols, (k1, k2, k3)),
        Command::Profile { points, rows, geometry } => commands::profile(&points, rows, &geometry),
        Command::Generate { profile, edge, rows, mode, out, geometry } => commands::generate(profile.as_deref(), edge.as_deref(), rows, mode.into(), out.as_deref(), &geometry),
        Command::Render { file, theta, compression, format, stroke, scale, out, geometry } => {
            commands::render(&file, theta, compression, format, stroke, scale, out.as_deref(), &geometry)
        }
        Command::Text { text, out_dir, compression, geometry } => commands::text(&text, &out_dir, compression, &geometry),
        Command::Heightmap { file, out_dir, compression, geometry } => commands::heightmap(&file, &out_dir, compression, &geometry),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
