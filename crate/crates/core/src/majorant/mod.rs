//! Hopf-type majorant: the scalar inequality bounding generator curves, its
//! rescaled transport form, the bootstrap lifespan and domination checks.

pub mod domination;
pub mod envelope;
pub mod hopf;

pub use domination::{check_domination, check_domination_exact, DominationMode, DominationReport, DOMINATION_TOL};
pub use envelope::{integrate_hopf_envelope, MajorantEnvelope, TimeStepping, CFL_SAFETY};
pub use hopf::{compute_m0, lifespan, lifespan_or_inf, theta, HopfProblem};
