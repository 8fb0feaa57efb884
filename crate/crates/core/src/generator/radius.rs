use crate::error::{Error, Result};
use crate::spectral::SpectralField;

pub const DEFAULT_FLOOR: f64 = 1e-14;

/// Least-squares fit `log |f_alpha| ~ c - rho |alpha|` over modes above `floor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub rho: f64,
    /// `e^c`, the fitted prefactor.
    pub prefactor: f64,
    pub modes_used: usize,
}

impl DecayFit {
    /// Predicted `sum_{n < |alpha|} C e^{-rho |alpha|}` for a 1-D field, i.e.
    /// the coefficient mass beyond cutoff `n` on both sides.
    pub fn tail_mass_1d(&self, n: usize) -> f64 {
        let q = (-self.rho).exp();
        2.0 * self.prefactor * q.powi(n as i32 + 1) / (1.0 - q)
    }
}

/// Fit over modes with weight above `floor` and `|alpha| >= min_norm`.
pub fn fit_decay(f: &SpectralField, floor: f64, min_norm: f64) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = (0..f.mode_count())
        .filter_map(|i| {
            let w = f.mode_weight(i);
            let a = f.mode_at(i).norm();
            (w > floor && a >= min_norm).then(|| (a, w.ln()))
        })
        .collect();
    const NEEDED: usize = 4;
    let distinct = {
        let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs.len()
    };
    if pts.len() < NEEDED || distinct < 2 {
        return Err(Error::TooFewModes { found: pts.len(), needed: NEEDED });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(DecayFit { rho: -slope, prefactor: (my - slope * mx).exp(), modes_used: pts.len() })
}

/// Estimated analyticity radius: the negated slope of `log |f_alpha|` against `|alpha|`.
pub fn radius_estimate(f: &SpectralField, floor: f64) -> Result<f64> {
    Ok(fit_decay(f, floor, 0.0)?.rho)
}
