//! End-to-end experiment: certify, simulate, measure, dominate, and write
//! every artifact needed to re-verify the verdict later.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::config::{ExperimentConfig, ModelName, Preset};
use crate::error::{Error, Result};
use crate::generator::io::write_curve_series_csv;
use crate::generator::GeneratorCurve;
use crate::majorant::{
    check_domination, check_domination_exact, compute_m0, integrate_hopf_envelope, lifespan_or_inf, theta,
    DominationMode, DominationReport, HopfProblem, MajorantEnvelope, TimeStepping,
};
use crate::models::{
    certify_condition, fit_condition_constant, perturbed_maxwellian, random_field, shear, simulate, sine, taylor_green,
    CertifyReport, Diagnostics, ModelSpec, Potential, RandomSpec, SimulationRecord, SimulationSettings,
};
use crate::spectral::io::{fmt_f64, read_field, write_field};
use crate::spectral::{ChebyshevGrid, SpectralField, VelocityGrid};

pub const CONFIG_FILE: &str = "config.toml";
pub const CURVES_FILE: &str = "curves.csv";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const ENVELOPE_FILE: &str = "envelope.csv";
pub const DOMINATION_FILE: &str = "domination.txt";
pub const CERTIFY_FILE: &str = "certify.txt";
pub const SUMMARY_FILE: &str = "summary.txt";
pub const FIELDS_DIR: &str = "fields";

/// Random fields used by the certification step of a run.
const CERTIFY_TRIALS: usize = 20;

pub fn build_model(cfg: &ExperimentConfig) -> Result<ModelSpec> {
    let m = &cfg.model;
    let model = match m.name {
        ModelName::Burgers => ModelSpec::burgers(),
        ModelName::LinearAdvection => ModelSpec::linear_advection(),
        ModelName::Euler => ModelSpec::euler(),
        ModelName::Hydrostatic => ModelSpec::hydrostatic(ChebyshevGrid::new(m.chebyshev_nodes)?)?,
        ModelName::Vdb | ModelName::Kie => {
            let potential = if m.name == ModelName::Vdb { Potential::DiracBenney } else { Potential::IncompressibleEuler };
            ModelSpec::kinetic(VelocityGrid::new(m.v_nodes, m.v_half_width), potential, m.weight)?
        }
    };
    Ok(model.with_augmentation(m.augmented).with_taylor_cap(m.taylor_cap))
}

pub fn initial_data(cfg: &ExperimentConfig, model: &ModelSpec) -> Result<SpectralField> {
    use crate::models::ModelKind;
    let (n, init) = (cfg.run.n, &cfg.initial);
    match (init.preset, &model.kind) {
        (Preset::Sine, _) => sine(n),
        (Preset::TaylorGreen, _) => taylor_green(n),
        (Preset::Shear, ModelKind::Hydrostatic { grid }) => shear(grid, n),
        (Preset::PerturbedMaxwellian, ModelKind::Kinetic { vgrid, .. }) => perturbed_maxwellian(vgrid, n, init.eps),
        (Preset::Random, _) => random_field(model, n, RandomSpec { rate: init.rate, amplitude: init.amplitude, seed: init.seed }),
        (Preset::Zero, _) => SpectralField::zeros(model.dim(), n, model.base_components(), model.transverse()),
        (p, _) => Err(Error::InvalidConfig(format!("preset {p:?} does not fit model {}", model.name))),
    }
}

pub fn simulation_settings(cfg: &ExperimentConfig) -> SimulationSettings {
    SimulationSettings {
        n: cfg.run.n,
        dt: cfg.run.dt,
        t_end: cfg.run.t_end,
        measure_every: cfg.run.measure_every,
        zgrid: cfg.zgrid(),
    }
}

/// Outcome of comparing a recorded run with its Hopf envelope.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub pass: bool,
    pub c0: f64,
    pub m0: f64,
    pub lifespan: f64,
    /// `theta(t) rho` at the last compared time.
    pub rho_end: f64,
    /// `None` for vanishing data, where every curve must be identically zero.
    pub report: Option<DominationReport>,
    pub envelope: Option<MajorantEnvelope>,
}

impl Verdict {
    pub fn summary_line(&self) -> String {
        format!("{} lifespan={} rho_end={}", if self.pass { "PASS" } else { "FAIL" }, self.lifespan, self.rho_end)
    }

    pub fn domination_text(&self) -> String {
        let mut out = String::new();
        match &self.report {
            Some(r) => out.push_str(&r.to_string()),
            None => {
                let _ = writeln!(out, "result: {}", if self.pass { "PASS" } else { "FAIL" });
                out.push_str("zero data: every measured curve must vanish\n");
            }
        }
        let _ = writeln!(out, "c0: {}", fmt_f64(self.c0));
        let _ = writeln!(out, "m0: {}", fmt_f64(self.m0));
        out
    }
}

/// Builds the envelope for the recorded states and compares. `C0` is the
/// model's constant times `c0_scale`, or the constant fitted on `states`
/// times the safety factor.
pub fn verify(cfg: &ExperimentConfig, model: &ModelSpec, times: &[f64], states: &[SpectralField], curves: &[GeneratorCurve]) -> Result<Verdict> {
    let rho = cfg.zgrid.rho;
    let zgrid = cfg.zgrid();
    let first = curves.first().ok_or_else(|| Error::GridMismatch("no recorded samples".into()))?;
    let m0 = compute_m0(first, rho)?;
    let mut c0 = model.c0;
    if cfg.majorant.fit_c0 {
        let fitted = fit_condition_constant(model, states, cfg.run.n, &zgrid)?;
        if fitted > 0.0 {
            c0 = fitted * cfg.majorant.fit_safety;
        }
    }
    c0 *= cfg.majorant.c0_scale;

    if m0 == 0.0 {
        let pass = curves.iter().all(|c| c.values.iter().all(|v| *v == 0.0));
        return Ok(Verdict { pass, c0, m0, lifespan: f64::INFINITY, rho_end: rho, report: None, envelope: None });
    }

    let problem = HopfProblem::new(c0, model.series.clone(), rho, m0)?;
    let life = lifespan_or_inf(&problem)?;
    let mut tgrid = Vec::new();
    for &t in times {
        if t <= life * (1.0 + 1e-12) && theta(t, &problem)? > 0.0 {
            tgrid.push(t);
        }
    }
    let env = integrate_hopf_envelope(&problem, &tgrid, &zgrid, &first.values, TimeStepping::default())?;
    let k = tgrid.len();
    let report = match cfg.majorant.domination {
        DominationMode::Rescaled => {
            let series = states[..k].iter().map(|s| model.generator_series(s)).collect::<Result<Vec<_>>>()?;
            check_domination_exact(&env, &tgrid, &series)?
        }
        DominationMode::Fixed => check_domination(&env, &tgrid, &curves[..k], DominationMode::Fixed)?,
    };
    let rho_end = theta(tgrid[k - 1], &problem)? * rho;
    Ok(Verdict { pass: report.pass, c0, m0, lifespan: life, rho_end, report: Some(report), envelope: Some(env) })
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub pass: bool,
    pub summary: String,
    pub verdict: Option<Verdict>,
    pub certify: CertifyReport,
    pub record: SimulationRecord,
    /// Set when the simulation stopped early.
    pub aborted: Option<Error>,
}

impl RunOutcome {
    /// 0 on PASS, 1 on FAIL or an aborted run.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn diagnostics_csv(diags: &[Diagnostics]) -> String {
    let mut out = String::from("t,energy,mass,radius_hat,max_tail_coeff,divergence,consistency\n");
    for d in diags {
        let row = [d.t, d.energy, d.mass, d.radius_hat, d.max_tail_coeff, d.divergence, d.consistency];
        out.push_str(&row.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn field_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(FIELDS_DIR).join(format!("state_{k:05}.txt"))
}

fn write_record(dir: &Path, record: &SimulationRecord) -> Result<()> {
    fs::create_dir_all(dir.join(FIELDS_DIR))?;
    for (k, s) in record.states.iter().enumerate() {
        fs::write(field_path(dir, k), write_field(s))?;
    }
    fs::write(dir.join(CURVES_FILE), write_curve_series_csv(&record.times, &record.curves))?;
    fs::write(dir.join(DIAGNOSTICS_FILE), diagnostics_csv(&record.diagnostics))?;
    Ok(())
}

fn certify_text(r: &CertifyReport) -> String {
    format!(
        "bound: {}\nresult: {}\ntrials: {}\nmax_ratio: {:e}\nworst_trial: {}\nworst_z: {:e}\n",
        r.bound,
        if r.passed() { "PASS" } else { "FAIL" },
        r.ratios.len(),
        r.max_ratio,
        r.worst.0,
        r.worst.1
    )
}

/// Runs the experiment. Configuration errors return `Err` before anything is
/// written; a run that aborts (blow-up) still writes its partial record and
/// a FAIL summary.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let model = build_model(cfg)?;
    let u0 = initial_data(cfg, &model)?;
    let settings = simulation_settings(cfg);
    settings.steps()?;
    let dir = cfg.run.output.clone();
    fs::create_dir_all(&dir)?;
    fs::write(dir.join(CONFIG_FILE), cfg.to_toml())?;

    let certify = certify_condition(&model, CERTIFY_TRIALS, cfg.run.n.min(8), &settings.zgrid, cfg.initial.seed)?;
    fs::write(dir.join(CERTIFY_FILE), certify_text(&certify))?;

    let (record, aborted) = match simulate(&model, &u0, &settings) {
        Ok(r) => (r, None),
        Err(abort) => (abort.partial, Some(abort.error)),
    };
    write_record(&dir, &record)?;

    if let Some(err) = aborted {
        let summary = format!("FAIL lifespan=nan rho_end=nan aborted: {err}");
        fs::write(dir.join(SUMMARY_FILE), format!("{summary}\n"))?;
        return Ok(RunOutcome { dir, pass: false, summary, verdict: None, certify, record, aborted: Some(err) });
    }

    let verdict = verify(cfg, &model, &record.times, &record.states, &record.curves)?;
    if let Some(env) = &verdict.envelope {
        fs::write(dir.join(ENVELOPE_FILE), env.to_csv())?;
    }
    fs::write(dir.join(DOMINATION_FILE), verdict.domination_text())?;
    let summary = verdict.summary_line();
    fs::write(dir.join(SUMMARY_FILE), format!("{summary}\n"))?;
    Ok(RunOutcome { dir, pass: verdict.pass, summary, verdict: Some(verdict), certify, record, aborted: None })
}

/// Result of re-verifying an artifact directory.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub stored_pass: bool,
    pub pass: bool,
    /// Curves recomputed from the stored fields match `curves.csv` byte for byte.
    pub curves_reproduced: bool,
    pub summary: String,
}

impl CheckOutcome {
    pub fn reproduced(&self) -> bool {
        self.curves_reproduced && self.pass == self.stored_pass
    }

    /// 0 when the stored PASS is reproduced, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.reproduced() && self.pass {
            0
        } else {
            1
        }
    }
}

/// Re-derives the verdict from the stored config and fields alone.
pub fn check(dir: &Path) -> Result<CheckOutcome> {
    let cfg = ExperimentConfig::load(&dir.join(CONFIG_FILE))?;
    let model = build_model(&cfg)?;
    let stored_summary = fs::read_to_string(dir.join(SUMMARY_FILE))?;
    let stored_pass = match stored_summary.split_whitespace().next() {
        Some("PASS") => true,
        Some("FAIL") => false,
        _ => return Err(Error::Parse(format!("summary {stored_summary:?} has no verdict"))),
    };
    let stored_curves = fs::read_to_string(dir.join(CURVES_FILE))?;
    let (times, _) = crate::generator::io::read_curve_series_csv(&stored_curves)?;
    let states = (0..times.len())
        .map(|k| read_field(&fs::read_to_string(field_path(dir, k))?))
        .collect::<Result<Vec<_>>>()?;
    let zgrid = cfg.zgrid();
    let curves = states
        .iter()
        .map(|s| model.generator_series(s)?.curve(&zgrid))
        .collect::<Result<Vec<_>>>()?;
    let curves_reproduced = write_curve_series_csv(&times, &curves) == stored_curves;

    if stored_summary.contains("aborted") {
        return Ok(CheckOutcome { stored_pass, pass: false, curves_reproduced, summary: stored_summary.trim().to_string() });
    }
    let verdict = verify(&cfg, &model, &times, &states, &curves)?;
    Ok(CheckOutcome { stored_pass, pass: verdict.pass, curves_reproduced, summary: verdict.summary_line() })
}
