//! Model equations on truncated Fourier states: right-hand sides, the
//! projected Galerkin system, instrumented runs and condition (7) checks.

pub mod certify;
pub mod presets;
pub mod rhs;
pub mod simulate;
pub mod spec;

pub use certify::{certify_condition, condition_ratio, fit_condition_constant, CertifyReport};
pub use presets::{maxwellian, perturbed_maxwellian, random_field, shear, sine, taylor_green, RandomSpec};
pub use rhs::{
    burgers_rhs, channel_velocity, euler_rhs, hydrostatic_rhs, kie_potential, kinetic_rhs, linear_advection_rhs,
    vdb_potential, vdb_rhs, Potential,
};
pub use simulate::{
    diagnose, galerkin_step, simulate, Diagnostics, SimulationAbort, SimulationRecord, SimulationSettings,
    BLOWUP_THRESHOLD,
};
pub use spec::{elliptic_constant, kinetic_constant, ModelKind, ModelSpec, StateLayout, EULER_C0};
