//! Generator functions: exponentially weighted sums of Fourier coefficient
//! magnitudes, in plain, channel (mixed) and kinetic (velocity-weighted) form.

pub mod calculus;
pub mod curve;
pub mod io;
pub mod radius;
pub mod series;

pub use calculus::{check_calculus, check_composition, full_gradient, CalculusReport};
pub use curve::{
    fourier_series, gen_fourier, gen_kinetic, gen_mixed, kinetic_series, mixed_series, uniform_zgrid,
    CurveMeta, GenSeries, GenTerm, GeneratorCurve, SpaceMembership, Variant, DEFAULT_TAYLOR_CAP,
    DEFAULT_Z_POINTS,
};
pub use radius::{fit_decay, radius_estimate, DecayFit, DEFAULT_FLOOR};
pub use series::{gen_compose_majorant, MajorantSeries};
