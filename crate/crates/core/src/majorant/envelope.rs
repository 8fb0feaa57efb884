//! Numerical majorant: the equality form of the rescaled Hopf inequality,
//! integrated with first-order upwinding and an SSP Runge-Kutta time stepper.
//!
//! With `F(t, z) = G(t, theta(t) z)` the inequality becomes
//!
//! ```text
//! d_t F <= C0 F~(F) + (C0 F~(F) + theta'(t) z) / theta(t) * d_z F
//! ```
//!
//! The advection coefficient is positive at `z = 0` and negative at `z = rho`
//! while `F <= 2 M0`, so characteristics leave the domain at both ends and no
//! boundary data is needed.

use super::hopf::{lifespan_or_inf, theta, HopfProblem};
use crate::error::{Error, Result};
use crate::spectral::io::fmt_f64;

/// Default CFL safety factor for adaptive steps.
pub const CFL_SAFETY: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStepping {
    /// Uniform substeps no larger than `dt`; violating the CFL bound is an error.
    Fixed(f64),
    /// Adaptive substeps `safety * dz / max |speed|`.
    Cfl(f64),
}

impl Default for TimeStepping {
    fn default() -> Self {
        TimeStepping::Cfl(CFL_SAFETY)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajorantEnvelope {
    pub tgrid: Vec<f64>,
    pub zgrid: Vec<f64>,
    /// `numeric[k][j]` approximates the majorant at `(tgrid[k], zgrid[j])`.
    pub numeric: Vec<Vec<f64>>,
    pub closed_form: Vec<f64>,
    pub theta: Vec<f64>,
    /// `rho(t) = theta(t) rho`.
    pub rho_shrink: Vec<f64>,
    pub lifespan: f64,
}

impl MajorantEnvelope {
    pub fn rho(&self) -> f64 {
        self.zgrid.last().copied().unwrap_or(0.0)
    }

    /// Largest `numeric - closed_form` over the whole table.
    pub fn max_excess_over_closed_form(&self) -> f64 {
        self.numeric
            .iter()
            .zip(&self.closed_form)
            .flat_map(|(row, cf)| row.iter().map(move |v| v - cf))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// CSV with header `t,z,numeric,closed_form,theta`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,z,numeric,closed_form,theta\n");
        for (k, t) in self.tgrid.iter().enumerate() {
            for (j, z) in self.zgrid.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f64(*t),
                    fmt_f64(*z),
                    fmt_f64(self.numeric[k][j]),
                    fmt_f64(self.closed_form[k]),
                    fmt_f64(self.theta[k])
                ));
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let mut env = MajorantEnvelope {
            tgrid: Vec::new(),
            zgrid: Vec::new(),
            numeric: Vec::new(),
            closed_form: Vec::new(),
            theta: Vec::new(),
            rho_shrink: Vec::new(),
            lifespan: f64::NAN,
        };
        let num = |s: &str| -> Result<f64> { s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}"))) };
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() != 5 {
                return Err(Error::Parse("envelope rows need 5 columns".into()));
            }
            let (t, z) = (num(&rec[0])?, num(&rec[1])?);
            if env.tgrid.last() != Some(&t) {
                env.tgrid.push(t);
                env.numeric.push(Vec::new());
                env.closed_form.push(num(&rec[3])?);
                env.theta.push(num(&rec[4])?);
            }
            if env.tgrid.len() == 1 {
                env.zgrid.push(z);
            }
            env.numeric.last_mut().expect("pushed").push(num(&rec[2])?);
        }
        if env.numeric.iter().any(|row| row.len() != env.zgrid.len()) {
            return Err(Error::Parse("ragged envelope table".into()));
        }
        let rho = env.rho();
        env.rho_shrink = env.theta.iter().map(|th| th * rho).collect();
        Ok(env)
    }
}

struct Rescaled<'a> {
    problem: &'a HopfProblem,
    zgrid: &'a [f64],
    slope: f64,
}

impl Rescaled<'_> {
    fn speeds(&self, phi: &[f64], t: f64) -> Result<Vec<f64>> {
        let th = 1.0 + self.slope * t;
        phi.iter()
            .zip(self.zgrid)
            .map(|(&p, &z)| Ok((self.problem.c0 * self.problem.series.eval(p.max(0.0))? + self.slope * z) / th))
            .collect()
    }

    fn min_spacing(&self) -> f64 {
        self.zgrid.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    fn rate(&self, phi: &[f64], t: f64) -> Result<Vec<f64>> {
        let a = self.speeds(phi, t)?;
        let n = phi.len();
        let z = self.zgrid;
        (0..n)
            .map(|j| {
                let fwd = (j + 1 < n).then(|| (phi[j + 1] - phi[j]) / (z[j + 1] - z[j]));
                let bwd = (j > 0).then(|| (phi[j] - phi[j - 1]) / (z[j] - z[j - 1]));
                // Upwind: information travels against the sign of `a`.
                let slope = if a[j] > 0.0 { fwd.or(bwd) } else { bwd.or(fwd) }.unwrap_or(0.0);
                Ok(self.problem.c0 * self.problem.series.eval(phi[j].max(0.0))? + a[j] * slope)
            })
            .collect()
    }

    fn max_speed(&self, phi: &[f64], t: f64) -> Result<f64> {
        Ok(self.speeds(phi, t)?.iter().map(|a| a.abs()).fold(0.0, f64::max))
    }

    /// Three-stage strong-stability-preserving Runge-Kutta step.
    fn step(&self, phi: &[f64], t: f64, h: f64) -> Result<Vec<f64>> {
        let k1 = self.rate(phi, t)?;
        let s1: Vec<f64> = phi.iter().zip(&k1).map(|(p, k)| p + h * k).collect();
        let k2 = self.rate(&s1, t + h)?;
        let s2: Vec<f64> = phi
            .iter()
            .zip(s1.iter().zip(&k2))
            .map(|(p, (s, k))| 0.75 * p + 0.25 * (s + h * k))
            .collect();
        let k3 = self.rate(&s2, t + 0.5 * h)?;
        Ok(phi
            .iter()
            .zip(s2.iter().zip(&k3))
            .map(|(p, (s, k))| p / 3.0 + 2.0 / 3.0 * (s + h * k))
            .collect())
    }
}

/// Integrates the equality form of the rescaled Hopf inequality from
/// `initial` (values on `zgrid`, which must span `[0, rho]`) and samples it
/// at every time in `tgrid` (ascending, starting at 0, with `theta > 0`).
pub fn integrate_hopf_envelope(
    problem: &HopfProblem,
    tgrid: &[f64],
    zgrid: &[f64],
    initial: &[f64],
    stepping: TimeStepping,
) -> Result<MajorantEnvelope> {
    if zgrid.len() < 2 || zgrid[0] != 0.0 || (zgrid[zgrid.len() - 1] - problem.rho).abs() > 1e-12 * problem.rho {
        return Err(Error::DomainMismatch("z-grid must span [0, rho]".into()));
    }
    if zgrid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::UnsortedGrid);
    }
    if initial.len() != zgrid.len() {
        return Err(Error::GridMismatch("initial data length differs from z-grid".into()));
    }
    if tgrid.first() != Some(&0.0) || tgrid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::GridMismatch("t-grid must start at 0 and increase".into()));
    }
    let t_end = *tgrid.last().expect("nonempty");
    let th_end = theta(t_end, problem)?;
    if !(th_end > 0.0) {
        return Err(Error::DomainMismatch(format!("theta({t_end}) = {th_end} is not positive")));
    }

    let sys = Rescaled { problem, zgrid, slope: problem.theta_slope()? };
    let dz = sys.min_spacing();
    let mut phi = initial.to_vec();
    let mut numeric = vec![phi.clone()];
    let mut t = 0.0;
    for &target in &tgrid[1..] {
        match stepping {
            TimeStepping::Fixed(dt) => {
                let span = target - t;
                let count = ((span / dt) - 1e-9).ceil().max(1.0) as usize;
                let h = span / count as f64;
                for s in 0..count {
                    let ts = t + h * s as f64;
                    let bound = dz / sys.max_speed(&phi, ts)?;
                    if h > bound {
                        return Err(Error::CflViolation { dt: h, bound });
                    }
                    phi = sys.step(&phi, ts, h)?;
                }
                t = target;
            }
            TimeStepping::Cfl(safety) => {
                while t < target {
                    let speed = sys.max_speed(&phi, t)?;
                    let mut h = if speed > 0.0 { safety * dz / speed } else { target - t };
                    if t + h >= target * (1.0 - 1e-14) {
                        h = target - t;
                    }
                    phi = sys.step(&phi, t, h)?;
                    t = if h == target - t { target } else { t + h };
                }
            }
        }
        numeric.push(phi.clone());
    }

    let theta_vals = tgrid.iter().map(|&t| theta(t, problem)).collect::<Result<Vec<_>>>()?;
    Ok(MajorantEnvelope {
        tgrid: tgrid.to_vec(),
        zgrid: zgrid.to_vec(),
        numeric,
        closed_form: tgrid.iter().map(|&t| problem.closed_form(t)).collect::<Result<_>>()?,
        rho_shrink: theta_vals.iter().map(|th| th * problem.rho).collect(),
        theta: theta_vals,
        lifespan: lifespan_or_inf(problem)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{uniform_zgrid, MajorantSeries};

    fn tgrid(end: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| end * k as f64 / n as f64).collect()
    }

    #[test]
    fn constant_data_grows_exponentially() {
        let (m0, c0) = (1.5, 1.0);
        let p = HopfProblem::new(c0, MajorantSeries::identity(), 1.0, m0).unwrap();
        let zs = uniform_zgrid(1.0, 65);
        let ts = tgrid(0.15, 15);
        let env = integrate_hopf_envelope(&p, &ts, &zs, &vec![m0; zs.len()], TimeStepping::Fixed(1e-4)).unwrap();
        for (t, row) in ts.iter().zip(&env.numeric) {
            let exact = m0 * (c0 * t).exp();
            for v in row {
                assert!((v - exact).abs() < 1e-6, "t={t}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let p = HopfProblem::new(2.0, MajorantSeries::identity(), 1.0, 0.0).unwrap();
        let zs = uniform_zgrid(1.0, 17);
        let env = integrate_hopf_envelope(&p, &tgrid(1.0, 4), &zs, &[0.0; 17], TimeStepping::default()).unwrap();
        assert!(env.numeric.iter().flatten().all(|&v| v == 0.0));
        assert_eq!(env.lifespan, f64::INFINITY);
    }

    #[test]
    fn cfl_violation_reported() {
        let p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 1.0).unwrap();
        let zs = uniform_zgrid(1.0, 65);
        let err = integrate_hopf_envelope(&p, &[0.0, 0.1], &zs, &vec![1.0; 65], TimeStepping::Fixed(0.05)).unwrap_err();
        assert!(matches!(err, Error::CflViolation { .. }));
    }

    #[test]
    fn theta_must_stay_positive() {
        let p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 1.0).unwrap();
        let zs = uniform_zgrid(1.0, 9);
        let err = integrate_hopf_envelope(&p, &[0.0, 0.34], &zs, &[1.0; 9], TimeStepping::default()).unwrap_err();
        assert!(matches!(err, Error::DomainMismatch(_)));
    }

    #[test]
    fn csv_roundtrip() {
        let p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 1.0).unwrap();
        let zs = uniform_zgrid(1.0, 9);
        let env = integrate_hopf_envelope(&p, &tgrid(0.2, 4), &zs, &[1.0; 9], TimeStepping::default()).unwrap();
        let back = MajorantEnvelope::from_csv(&env.to_csv()).unwrap();
        assert_eq!(back.numeric, env.numeric);
        assert_eq!(back.theta, env.theta);
        assert_eq!(back.zgrid, env.zgrid);
    }
}
