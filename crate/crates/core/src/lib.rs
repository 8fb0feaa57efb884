//! Generator functions for Fourier-Galerkin spectral solutions: exact
//! spectral algebra, generator curves, Hopf-type majorant envelopes, model
//! right-hand sides and an experiment harness.

pub mod error;
pub mod generator;
pub mod harness;
pub mod majorant;
pub mod models;
pub mod spectral;

pub use error::{Error, Result};
