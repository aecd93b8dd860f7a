//! The shape compiler: profiles to edges, edges to lattices, and pixel
//! displays to stacks of layers.

mod display;
mod generate;
mod profile;

use thiserror::Error;

use crate::kinematics::KinematicsError;

pub use display::{
    expressed_heights, heightmap_to_layers, letter_to_layers, validate_heightmap, Font, HeightLayers, HeightViolation, LayerProfile, GLYPH_HEIGHT, GLYPH_WIDTH,
};
pub use generate::{generate_lattice, max_columns, GenerationMode, GenerationResult};
pub use profile::{approximate_profile, edge_staircase, ProfileApproximation, ProfilePolyline};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error("a slice needs an offset of {required:.4} mm, but offsets must stay below {limit} mm")]
    SlopeUnachievable { required: f64, limit: f64 },
    #[error("profile is {span:.4} mm wide; this many rows reach at most {limit} mm")]
    SpanExceeded { span: f64, limit: f64 },
    #[error("profile is not single-valued in y")]
    NotSingleValued,
    #[error("no flat back after {columns} columns")]
    GenerationDiverged { columns: usize },
    #[error("internal error, generated an inconsistent lattice: {0}")]
    InvalidIntermediate(String),
    #[error("no glyph for {0:?}")]
    UnknownGlyph(char),
    #[error("{} in-layer height steps exceed one unit", .0.len())]
    HeightSteps(Vec<HeightViolation>),
    #[error("an uncompressed lattice expresses no shape; set a compression above zero")]
    NoCompression,
    #[error("edge is empty")]
    EmptyEdge,
    #[error("points file line {0}: expected two numbers")]
    BadPointsLine(usize),
    #[error("font: {0}")]
    BadFont(String),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
}
