//! Symmetry-protected topological indices of one-dimensional quantum walks.
//!
//! The crate builds concrete walks (split-step, four-step, crossovers between
//! them), decouples them across a cut, extracts the eigenspaces at ±1 of the
//! resulting finite windows and computes the symmetry indices `si`, `si±`,
//! `si←`, `si→` together with the bulk winding number.

mod band;
pub mod error;
pub mod indices;
pub mod lattice;
pub mod cli;
pub mod models;
pub mod schur;
pub mod spectral;
pub mod symmetry;
#[doc(hidden)]
pub mod testing;

pub use error::{Error, Result};
