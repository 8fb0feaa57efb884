use std::fmt;

use super::spec::{ModelSpec, StateLayout};
use crate::error::{Error, Result};
use crate::generator::{fit_decay, GeneratorCurve, DEFAULT_FLOOR};
use crate::spectral::{max_mode_divergence, truncate, Mode, SpectralField};
use num_complex::Complex64;

/// Coefficients larger than this abort a run.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

/// One classical Runge-Kutta step of `d_t u = P_N A(P_N u)`. The time in a
/// `BlowupDetected` error is the step size; [`simulate`] replaces it by the
/// absolute time.
pub fn galerkin_step(state: &SpectralField, dt: f64, model: &ModelSpec, n: usize) -> Result<SpectralField> {
    if dt == 0.0 {
        return Ok(state.clone());
    }
    let k1 = model.rhs(state, n)?;
    let k2 = model.rhs(&state.axpy(0.5 * dt, &k1)?, n)?;
    let k3 = model.rhs(&state.axpy(0.5 * dt, &k2)?, n)?;
    let k4 = model.rhs(&state.axpy(dt, &k3)?, n)?;
    let incr = k1.add(&k4)?.add(&k2.add(&k3)?.scaled(2.0))?;
    let next = truncate(&state.axpy(dt / 6.0, &incr)?, n);
    let peak = next.max_abs();
    if !(peak <= BLOWUP_THRESHOLD) {
        return Err(Error::BlowupDetected { time: dt, max_coeff: peak });
    }
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    /// `sum_alpha |u_alpha|^2`, integrated over the transverse grid if any.
    pub energy: f64,
    /// Mean of the first component (its transverse integral for channel and
    /// kinetic layouts).
    pub mass: f64,
    /// Fitted decay rate of the coefficients; NaN when too few modes are active.
    pub radius_hat: f64,
    /// Largest mode magnitude in the outer shell `N - 1 < |alpha| <= N`.
    pub max_tail_coeff: f64,
    /// Largest `|alpha . u_alpha|` (vector states only, else 0).
    pub divergence: f64,
    /// Augmentation drift, see [`ModelSpec::consistency_defect`].
    pub consistency: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSettings {
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    /// Steps between recorded samples.
    pub measure_every: usize,
    pub zgrid: Vec<f64>,
}

impl SimulationSettings {
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt > 0.0) || !(self.t_end >= 0.0) {
            return Err(Error::InvalidConfig(format!("dt = {} and T = {} must be positive", self.dt, self.t_end)));
        }
        if self.measure_every == 0 {
            return Err(Error::InvalidConfig("measure_every must be at least 1".into()));
        }
        let ratio = self.t_end / self.dt;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidConfig(format!("T = {} is not a multiple of dt = {}", self.t_end, self.dt)));
        }
        Ok(steps as usize)
    }
}

#[derive(Debug, Clone)]
pub struct SimulationRecord {
    pub model: String,
    pub settings: SimulationSettings,
    pub times: Vec<f64>,
    pub states: Vec<SpectralField>,
    pub curves: Vec<GeneratorCurve>,
    pub diagnostics: Vec<Diagnostics>,
}

/// A run that stopped early, with everything recorded up to that point.
#[derive(Debug, Clone)]
pub struct SimulationAbort {
    pub error: Error,
    pub partial: SimulationRecord,
}

impl fmt::Display for SimulationAbort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} after {} samples", self.error, self.partial.times.len())
    }
}

impl From<SimulationAbort> for Error {
    fn from(a: SimulationAbort) -> Self {
        a.error
    }
}

pub fn diagnose(model: &ModelSpec, state: &SpectralField, t: f64, n: usize) -> Result<Diagnostics> {
    let base = model.base_state(state);
    let mut energy = 0.0;
    for c in 0..base.components() {
        for i in 0..base.mode_count() {
            let sq: Vec<Complex64> = base.slot(c, i).iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
            energy += model.transverse_integral(&sq).re;
        }
    }
    let mass = model.transverse_integral(base.at(0, Mode::ZERO)).re;
    let radius_hat = fit_decay(&base, DEFAULT_FLOOR, 0.0).map(|f| f.rho).unwrap_or(f64::NAN);
    let shell = (n as f64 - 1.0).max(0.0);
    let max_tail_coeff = (0..base.mode_count())
        .filter(|&i| base.mode_at(i).norm() > shell)
        .map(|i| base.mode_weight(i))
        .fold(0.0, f64::max);
    let divergence = if model.layout() == StateLayout::Vector2 { max_mode_divergence(&base)? } else { 0.0 };
    Ok(Diagnostics {
        t,
        energy,
        mass,
        radius_hat,
        max_tail_coeff,
        divergence,
        consistency: model.consistency_defect(state)?,
    })
}

/// Runs the Galerkin system from `u0` (unaugmented; projected to `P_N` first)
/// and records state, generator curve and diagnostics every
/// `measure_every` steps, including `t = 0` and the final time.
pub fn simulate(model: &ModelSpec, u0: &SpectralField, settings: &SimulationSettings) -> std::result::Result<SimulationRecord, SimulationAbort> {
    let mut record = SimulationRecord {
        model: model.name.clone(),
        settings: settings.clone(),
        times: Vec::new(),
        states: Vec::new(),
        curves: Vec::new(),
        diagnostics: Vec::new(),
    };
    macro_rules! attempt {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(error) => return Err(SimulationAbort { error, partial: record }),
            }
        };
    }
    let n = settings.n;
    let steps = attempt!(settings.steps());
    let start = truncate(&u0.resized(n), n);
    let mut state = attempt!(model.prepare_state(&start));
    let mut t = 0.0;
    for step in 0..=steps {
        if step % settings.measure_every == 0 || step == steps {
            let curve = attempt!(model.generator_series(&state).and_then(|s| s.curve(&settings.zgrid)));
            let diag = attempt!(diagnose(model, &state, t, n));
            record.times.push(t);
            record.states.push(state.clone());
            record.curves.push(curve);
            record.diagnostics.push(diag);
        }
        if step == steps {
            break;
        }
        state = match galerkin_step(&state, settings.dt, model, n) {
            Ok(s) => s,
            Err(Error::BlowupDetected { max_coeff, .. }) => {
                let error = Error::BlowupDetected { time: t + settings.dt, max_coeff };
                return Err(SimulationAbort { error, partial: record });
            }
            Err(error) => return Err(SimulationAbort { error, partial: record }),
        };
        t = (step + 1) as f64 * settings.dt;
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::uniform_zgrid;

    fn exp_ix(n: usize) -> SpectralField {
        SpectralField::from_entries(&[(vec![1], Complex64::new(1.0, 0.0))], 1, n).unwrap()
    }

    #[test]
    fn zero_step_is_identity() {
        let u = exp_ix(4);
        assert_eq!(galerkin_step(&u, 0.0, &ModelSpec::burgers(), 4).unwrap(), u);
    }

    #[test]
    fn linear_rotation_local_error() {
        // d_t u = d_x u on e^{ix} gives e^{i(x + t)}; RK4 has local error O(dt^5).
        let model = ModelSpec::linear_advection();
        let err = |dt: f64| {
            let s = galerkin_step(&exp_ix(2), dt, &model, 2).unwrap();
            (s.coeff(Mode::d1(1)) - Complex64::new(0.0, dt).exp()).norm()
        };
        let (e1, e2) = (err(0.1), err(0.05));
        assert!(e1 < 1e-6);
        let order = (e1 / e2).log2();
        assert!((order - 5.0).abs() < 0.1, "{order}");
    }

    #[test]
    fn zero_data_stay_zero() {
        let settings = SimulationSettings { n: 8, dt: 0.01, t_end: 0.05, measure_every: 2, zgrid: uniform_zgrid(1.0, 5) };
        let rec = simulate(&ModelSpec::burgers(), &SpectralField::scalar(1, 8).unwrap(), &settings).unwrap();
        assert_eq!(rec.times.len(), 4);
        assert!(rec.states.iter().all(|s| s.max_abs() == 0.0));
        assert!(rec.curves.iter().all(|c| c.values.iter().all(|v| *v == 0.0)));
    }

    #[test]
    fn blowup_keeps_partial_record() {
        let big = SpectralField::from_entries(&[(vec![1], Complex64::new(2e12, 0.0))], 1, 2).unwrap();
        let settings = SimulationSettings { n: 2, dt: 0.1, t_end: 0.5, measure_every: 1, zgrid: uniform_zgrid(1.0, 3) };
        let abort = simulate(&ModelSpec::linear_advection(), &big, &settings).unwrap_err();
        assert!(matches!(abort.error, Error::BlowupDetected { time, .. } if (time - 0.1).abs() < 1e-15));
        assert_eq!(abort.partial.times, vec![0.0]);
    }

    #[test]
    fn rejects_incommensurate_end_time() {
        let settings = SimulationSettings { n: 2, dt: 0.3, t_end: 1.0, measure_every: 1, zgrid: uniform_zgrid(1.0, 3) };
        assert!(matches!(settings.steps(), Err(Error::InvalidConfig(_))));
    }
}
