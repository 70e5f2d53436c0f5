//! Exact quantum evolution in a scalar linear potential, an independent
//! split-step spectral solver, and the experiments built on both: Gaussian
//! packets against linear-front barriers, the three-capacitor phase shift
//! generator, Stern–Gerlach splitting and an electrically driven spin flip.
//!
//! Start with [`gaussian::sample_gaussian`] and [`analytic::linear_evolve`];
//! the `examples/` directory has one runnable program per capability.

pub mod analytic;
pub mod cli;
pub mod config;
pub mod devices;
pub mod error;
pub mod gaussian;
pub mod grid;
pub mod observables;
pub mod oracle;
pub mod output;
pub mod potential;
pub mod spectral;
pub mod tunneling;
pub mod units;
pub mod verify;
pub mod wavefunction;

pub use error::{Error, Result};
pub use num_complex::Complex64;
