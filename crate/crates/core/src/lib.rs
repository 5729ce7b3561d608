//! Third-order Active Flux solver for the two-dimensional compressible Euler
//! equations on Cartesian grids.

pub mod bicharacteristics;
pub mod error;
pub mod harness;
pub mod limiting;
pub mod problems;
pub mod reconstruction;
pub mod state;
pub mod timestepper;

pub use error::{AfError, Result};
