//! Pointwise comparison of measured generator curves against an envelope.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::envelope::MajorantEnvelope;
use crate::error::{Error, Result};
use crate::generator::{GenSeries, GeneratorCurve};

/// Relative tolerance: a point passes if `measured - envelope <= TOL (1 + envelope)`.
pub const DOMINATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominationMode {
    /// Compare `Gen[u(t)](theta(t) z)` with the envelope at `z` on the rescaled grid.
    Rescaled,
    /// Compare `Gen[u(t)](z)` with the envelope at `z / theta(t)` for
    /// measured nodes `z <= theta(t) rho`.
    Fixed,
}

impl DominationMode {
    pub fn name(self) -> &'static str {
        match self {
            DominationMode::Rescaled => "rescaled",
            DominationMode::Fixed => "fixed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rescaled" => Ok(DominationMode::Rescaled),
            "fixed" => Ok(DominationMode::Fixed),
            other => Err(Error::Parse(format!("unknown domination mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub mode: DominationMode,
    pub pass: bool,
    /// Largest `measured - envelope`.
    pub max_excess: f64,
    /// Largest `(measured - envelope) / (1 + envelope)`.
    pub max_normalized: f64,
    /// `(t, z)` of `max_normalized`, `z` in original (unrescaled) units.
    pub argmax: (f64, f64),
    /// Largest `measured - closed_form` over the same points.
    pub closed_form_excess: f64,
    /// Largest `(measured - closed_form) / (1 + closed_form)`.
    pub closed_form_normalized: f64,
    pub points: usize,
    pub lifespan: f64,
}

impl fmt::Display for DominationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })?;
        writeln!(f, "mode: {}", self.mode.name())?;
        writeln!(f, "max_excess: {:e}", self.max_excess)?;
        writeln!(f, "max_normalized_excess: {:e}", self.max_normalized)?;
        writeln!(f, "argmax_t: {:e}", self.argmax.0)?;
        writeln!(f, "argmax_z: {:e}", self.argmax.1)?;
        writeln!(f, "closed_form_excess: {:e}", self.closed_form_excess)?;
        writeln!(f, "points: {}", self.points)?;
        writeln!(f, "lifespan: {:e}", self.lifespan)?;
        writeln!(f, "tolerance: {:e} * (1 + envelope)", DOMINATION_TOL)
    }
}

/// Piecewise-linear interpolation on an ascending grid. Generators are
/// convex, so this never underestimates them between nodes.
pub(crate) fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> Result<f64> {
    let last = xs.len() - 1;
    let slack = 1e-12 * xs[last].abs().max(1.0);
    if x < xs[0] - slack || x > xs[last] + slack {
        return Err(Error::GridMismatch(format!("{x} outside [{}, {}]", xs[0], xs[last])));
    }
    let k = xs.partition_point(|&v| v <= x).clamp(1, last);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let s = ((x - x0) / (x1 - x0)).clamp(0.0, 1.0);
    Ok(ys[k - 1] + s * (ys[k] - ys[k - 1]))
}

fn time_index(env: &MajorantEnvelope, t: f64) -> Result<usize> {
    env.tgrid
        .iter()
        .position(|&s| (s - t).abs() <= 1e-12 * s.abs().max(1.0))
        .ok_or_else(|| Error::GridMismatch(format!("measured time {t} is not on the envelope grid")))
}

struct Accumulator {
    rep: DominationReport,
}

impl Accumulator {
    fn new(env: &MajorantEnvelope, mode: DominationMode) -> Self {
        Self {
            rep: DominationReport {
                mode,
                pass: true,
                max_excess: f64::NEG_INFINITY,
                max_normalized: f64::NEG_INFINITY,
                argmax: (f64::NAN, f64::NAN),
                closed_form_excess: f64::NEG_INFINITY,
                closed_form_normalized: f64::NEG_INFINITY,
                points: 0,
                lifespan: env.lifespan,
            },
        }
    }

    fn visit(&mut self, t: f64, z: f64, meas: f64, bound: f64, closed_form: f64) {
        let rep = &mut self.rep;
        let excess = meas - bound;
        let normalized = excess / (1.0 + bound.abs());
        rep.points += 1;
        rep.max_excess = rep.max_excess.max(excess);
        rep.closed_form_excess = rep.closed_form_excess.max(meas - closed_form);
        rep.closed_form_normalized = rep.closed_form_normalized.max((meas - closed_form) / (1.0 + closed_form.abs()));
        if normalized > rep.max_normalized {
            rep.max_normalized = normalized;
            rep.argmax = (t, z);
        }
    }

    fn finish(mut self) -> Result<DominationReport> {
        let rep = &mut self.rep;
        if rep.points == 0 {
            return Err(Error::GridMismatch("no comparable points".into()));
        }
        rep.pass = rep.max_normalized <= DOMINATION_TOL && rep.closed_form_normalized <= DOMINATION_TOL;
        Ok(self.rep)
    }
}

fn within_lifespan(env: &MajorantEnvelope, t: f64) -> bool {
    t <= env.lifespan * (1.0 + 1e-12)
}

/// Compares measured curves sampled at `times` (each on the envelope time
/// grid) with the envelope, over times up to the lifespan. Measured values
/// between curve nodes are linearly interpolated.
pub fn check_domination(
    env: &MajorantEnvelope,
    times: &[f64],
    measured: &[GeneratorCurve],
    mode: DominationMode,
) -> Result<DominationReport> {
    if times.len() != measured.len() {
        return Err(Error::GridMismatch(format!("{} times for {} curves", times.len(), measured.len())));
    }
    let mut acc = Accumulator::new(env, mode);
    let rho = env.rho();
    for (&t, curve) in times.iter().zip(measured) {
        if !within_lifespan(env, t) {
            continue;
        }
        let k = time_index(env, t)?;
        let (th, cf, row) = (env.theta[k], env.closed_form[k], &env.numeric[k]);
        match mode {
            DominationMode::Rescaled => {
                for (&z, &bound) in env.zgrid.iter().zip(row) {
                    let meas = interpolate(&curve.zgrid, &curve.values, th * z)?;
                    acc.visit(t, th * z, meas, bound, cf);
                }
            }
            DominationMode::Fixed => {
                for (&z, &meas) in curve.zgrid.iter().zip(&curve.values) {
                    if z > th * rho * (1.0 + 1e-12) {
                        break;
                    }
                    let bound = interpolate(&env.zgrid, row, (z / th).min(rho))?;
                    acc.visit(t, z, meas, bound, cf);
                }
            }
        }
    }
    acc.finish()
}

/// Same comparison with measured generators evaluated exactly at
/// `theta(t) z` for every envelope node `z`, so no interpolation enters.
/// Both modes coincide here; the report records `Rescaled`.
pub fn check_domination_exact(env: &MajorantEnvelope, times: &[f64], measured: &[GenSeries]) -> Result<DominationReport> {
    if times.len() != measured.len() {
        return Err(Error::GridMismatch(format!("{} times for {} series", times.len(), measured.len())));
    }
    let mut acc = Accumulator::new(env, DominationMode::Rescaled);
    for (&t, series) in times.iter().zip(measured) {
        if !within_lifespan(env, t) {
            continue;
        }
        let k = time_index(env, t)?;
        let (th, cf) = (env.theta[k], env.closed_form[k]);
        for (&z, &bound) in env.zgrid.iter().zip(&env.numeric[k]) {
            acc.visit(t, th * z, series.eval(th * z), bound, cf);
        }
    }
    acc.finish()
}
