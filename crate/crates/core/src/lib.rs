//! Exact Gaussian simulation of harmonic-oscillator detectors coupled to
//! single field modes, with entanglement and excitation diagnostics.

pub mod cli;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod expm;
pub mod fock;
pub mod matrix;
pub mod scalar;
pub mod scenarios;
pub mod symplectic;

pub use error::{Error, Result};
pub use matrix::Mat;
pub use scalar::{Extended, Precision, Real};
