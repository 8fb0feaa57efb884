//! Convergence sweeps over N, dt or the Taylor cap B.

use std::fmt::Write as _;

use super::config::ExperimentConfig;
use super::run::{build_model, run, RunOutcome};
use crate::error::{Error, Result};
use crate::spectral::io::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    N,
    Dt,
    B,
}

impl SweepAxis {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "N" | "n" => Ok(SweepAxis::N),
            "dt" => Ok(SweepAxis::Dt),
            "B" | "b" => Ok(SweepAxis::B),
            other => Err(Error::InvalidConfig(format!("unknown sweep axis {other:?}, expected N, dt or B"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::N => "N",
            SweepAxis::Dt => "dt",
            SweepAxis::B => "B",
        }
    }

    fn key(self) -> &'static str {
        match self {
            SweepAxis::N => "run.n",
            SweepAxis::Dt => "run.dt",
            SweepAxis::B => "model.taylor_cap",
        }
    }

    /// Resolution `h` used for observed orders: `dt`, `1/N` or `1/B`.
    fn step(self, value: f64) -> f64 {
        match self {
            SweepAxis::Dt => value,
            SweepAxis::N | SweepAxis::B => 1.0 / value,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    /// `PASS`, `FAIL` or the error that stopped the entry.
    pub status: String,
    /// Final-time difference to the previous entry.
    pub diff: Option<f64>,
    /// `ln(d_{k-1} / d_k) / ln(h_{k-2} / h_{k-1})` from three consecutive entries.
    pub order: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("axis,value,status,diff,order\n");
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", self.axis.name(), r.value, r.status, opt(r.diff), opt(r.order));
        }
        out
    }

    pub fn diffs(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.diff).collect()
    }

    pub fn orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.order).collect()
    }
}

fn format_value(axis: SweepAxis, v: f64) -> Result<String> {
    match axis {
        SweepAxis::Dt if v > 0.0 => Ok(format!("{v:e}")),
        SweepAxis::N | SweepAxis::B if v >= 0.0 && v.fract() == 0.0 => Ok(format!("{}", v as u64)),
        _ => Err(Error::InvalidConfig(format!("bad {} value {v}", axis.name()))),
    }
}

/// Difference between the final states of two runs: `Gen[u_a - u_b](0)` for
/// N and dt, and the gap between final generator values at `z = rho` for B.
fn final_diff(axis: SweepAxis, cfg: &ExperimentConfig, a: &RunOutcome, b: &RunOutcome) -> Result<f64> {
    let (ra, rb) = (&a.record, &b.record);
    if axis == SweepAxis::B {
        let last = |r: &crate::models::SimulationRecord| r.curves.last().and_then(|c| c.values.last().copied());
        return match (last(ra), last(rb)) {
            (Some(x), Some(y)) => Ok((x - y).abs()),
            _ => Err(Error::GridMismatch("empty record".into())),
        };
    }
    let (sa, sb) = match (ra.states.last(), rb.states.last()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::GridMismatch("empty record".into())),
    };
    let n = sa.trunc().max(sb.trunc());
    let model = build_model(cfg)?;
    Ok(model.generator_series(&sa.resized(n).sub(&sb.resized(n))?)?.eval(0.0))
}

/// One run per value (in parallel, each in `output/<axis>_<value>`). Failed
/// entries are recorded and the sweep continues.
pub fn sweep(template: &ExperimentConfig, axis: SweepAxis, values: &[f64]) -> Result<SweepReport> {
    if values.len() < 2 {
        return Err(Error::InvalidConfig(format!("a sweep needs at least 2 values, got {}", values.len())));
    }
    let mut configs = Vec::with_capacity(values.len());
    for &v in values {
        let text = format_value(axis, v)?;
        let out = template.run.output.join(format!("{}_{}", axis.name(), text));
        let mut cfg = template.with_overrides(&[format!("{}={}", axis.key(), text)])?;
        cfg.run.output = out;
        configs.push(cfg);
    }
    let outcomes: Vec<Result<RunOutcome>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs.iter().map(|c| s.spawn(move || run(c))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let mut rows: Vec<SweepRow> = Vec::with_capacity(values.len());
    for (k, (&v, out)) in values.iter().zip(&outcomes).enumerate() {
        let status = match out {
            Ok(o) if o.aborted.is_some() => format!("ABORTED {}", o.aborted.as_ref().expect("checked")),
            Ok(o) => (if o.pass { "PASS" } else { "FAIL" }).to_string(),
            Err(e) => format!("ERROR {e}"),
        }
        .replace(',', ";");
        let diff = match (k.checked_sub(1).map(|j| &outcomes[j]), out) {
            (Some(Ok(prev)), Ok(cur)) if prev.aborted.is_none() && cur.aborted.is_none() => {
                final_diff(axis, &configs[k], prev, cur).ok()
            }
            _ => None,
        };
        let order = if k >= 2 {
            match (rows[k - 1].diff, diff) {
                (Some(d1), Some(d2)) if d1 > 0.0 && d2 > 0.0 => {
                    Some((d1 / d2).ln() / (axis.step(values[k - 2]) / axis.step(values[k - 1])).ln())
                }
                _ => None,
            }
        } else {
            None
        };
        rows.push(SweepRow { value: v, status, diff, order });
    }
    let report = SweepReport { axis, rows };
    std::fs::create_dir_all(&template.run.output)?;
    std::fs::write(template.run.output.join(format!("sweep_{}.csv", axis.name())), report.to_csv())?;
    Ok(report)
}
