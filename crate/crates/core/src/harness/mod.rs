//! Configuration-driven experiments: single runs, re-verification of stored
//! artifacts, convergence sweeps and the generator calculus suite.

pub mod calculus;
pub mod config;
pub mod run;
pub mod sweep;

pub use calculus::{calculus_suite, random_polynomial, CalculusSuiteReport};
pub use config::{ExperimentConfig, ModelName, Preset};
pub use run::{build_model, check, initial_data, run, verify, CheckOutcome, RunOutcome, Verdict};
pub use sweep::{sweep, SweepAxis, SweepReport, SweepRow};
