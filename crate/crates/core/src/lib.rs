//! Programmable reentrant-honeycomb lattices.
//!
//! A lattice of `A x B` slanted links is programmed by choosing which way
//! each link leans. [`validity`] decides whether a choice is consistent with
//! the rigid crossbars, [`counting`] and [`scaling`] say how many consistent
//! choices exist, [`kinematics`] places the joints at any compression, and
//! [`design`] works backwards from a wanted shape to an encoding.
//! [`render`] draws the result.
//!
//! ```
//! use starlattice::design::{generate_lattice, GenerationMode};
//! use starlattice::validity::check_validity;
//!
//! let lattice = generate_lattice(&"++-++".parse().unwrap(), GenerationMode::MinimizeSpread).unwrap().lattice;
//! assert!(check_validity(&lattice).is_valid);
//! ```

pub mod counting;
pub mod design;
pub mod kinematics;
pub mod model;
pub mod render;
pub mod scaling;
pub mod validity;
