use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode {mode:?} lies outside the truncation box |alpha|_inf <= {trunc}")]
    IndexOutOfTruncation { mode: Vec<i64>, trunc: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("axis {axis} out of range for a {dim}-dimensional field")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("field layout not supported here: {0}")]
    UnsupportedLayout(String),

    #[error("singular collocation system: {0}")]
    SingularSystem(String),

    #[error("grid of {points} points per axis cannot resolve cutoff {trunc} (need >= {})", 2 * trunc + 1)]
    GridTooCoarse { points: usize, trunc: usize },

    #[error("generator evaluated at negative z = {0}")]
    NegativeZ(f64),

    #[error("z-grid must be ascending")]
    UnsortedGrid,

    #[error("Taylor cap {cap} exceeds the stable y-derivative order {limit}")]
    TaylorCapTooLarge { cap: usize, limit: usize },

    #[error("velocity weight exponent m = {m} must exceed d + 2 = {bound}")]
    WeightTooSmall { m: f64, bound: f64 },

    #[error("velocity grid not decayed: boundary/max weighted ratio {ratio:e}")]
    GridNotDecayed { ratio: f64 },

    #[error("argument {value} outside the convergence radius {radius}")]
    OutsideConvergence { value: f64, radius: f64 },

    #[error("only {found} modes above the floor, need at least {needed}")]
    TooFewModes { found: usize, needed: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("initial generator vanishes (M0 = 0)")]
    ZeroData,

    #[error("time step {dt:e} violates CFL bound {bound:e}")]
    CflViolation { dt: f64, bound: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("input not divergence free: max |alpha . u_alpha| = {0:e}")]
    NotDivergenceFree(f64),

    #[error("blow-up detected at t = {time}: max |coefficient| = {max_coeff:e}")]
    BlowupDetected { time: f64, max_coeff: f64 },

    #[error("augmented components drifted from derivatives of the base field by {0:e}")]
    AugmentationDrift(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
