//! Numerical check of the generator calculus: subadditivity, submultiplicativity,
//! the derivative identity, and composition with analytic nonlinearities.

use super::curve::{check_zgrid, fourier_series};
use super::series::MajorantSeries;
use crate::error::Result;
use crate::spectral::{convolve, derivative, SpectralField};

/// Inequalities are accepted down to this (normalised) slack.
pub const INEQUALITY_TOL: f64 = 1e-12;
/// Relative tolerance for `Gen[grad f] = d/dz Gen[f]`.
pub const DERIVATIVE_TOL: f64 = 1e-10;

/// Per-z slacks are `(rhs - lhs) / (1 + rhs)`; nonnegative means the
/// inequality holds.
#[derive(Debug, Clone, PartialEq)]
pub struct CalculusReport {
    pub zgrid: Vec<f64>,
    pub sum_slack: Vec<f64>,
    pub product_slack: Vec<f64>,
    /// Max over z of `|Gen[grad f] - d/dz Gen[f]| / max(|d/dz Gen[f]|, tiny)`.
    pub derivative_residual: f64,
}

impl CalculusReport {
    pub fn min_sum_slack(&self) -> f64 {
        self.sum_slack.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_product_slack(&self) -> f64 {
        self.product_slack.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn passed(&self) -> bool {
        self.min_sum_slack() >= -INEQUALITY_TOL
            && self.min_product_slack() >= -INEQUALITY_TOL
            && self.derivative_residual <= DERIVATIVE_TOL
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.min_sum_slack() < -INEQUALITY_TOL {
            out.push(format!("sum: slack {:e}", self.min_sum_slack()));
        }
        if self.min_product_slack() < -INEQUALITY_TOL {
            out.push(format!("product: slack {:e}", self.min_product_slack()));
        }
        if self.derivative_residual > DERIVATIVE_TOL {
            out.push(format!("derivative: residual {:e}", self.derivative_residual));
        }
        out
    }
}

fn slack(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / (1.0 + rhs)
}

/// Derivatives along every periodic axis stacked as extra components, so the
/// per-mode Euclidean norm is `|alpha| |f_alpha|`.
pub fn full_gradient(f: &SpectralField) -> Result<SpectralField> {
    let parts = (0..f.dim()).map(|a| derivative(f, a)).collect::<Result<Vec<_>>>()?;
    SpectralField::stack(&parts)
}

pub fn check_calculus(f: &SpectralField, g: &SpectralField, zgrid: &[f64]) -> Result<CalculusReport> {
    check_zgrid(zgrid)?;
    let n = f.trunc().max(g.trunc());
    let (fe, ge) = (f.resized(n), g.resized(n));
    let gf = fourier_series(f)?;
    let gg = fourier_series(g)?;
    let gsum = fourier_series(&fe.add(&ge)?)?;
    let gprod = fourier_series(&convolve(f, g)?)?;
    let ggrad = fourier_series(&full_gradient(f)?)?;

    let mut report = CalculusReport {
        zgrid: zgrid.to_vec(),
        sum_slack: Vec::with_capacity(zgrid.len()),
        product_slack: Vec::with_capacity(zgrid.len()),
        derivative_residual: 0.0,
    };
    for &z in zgrid {
        let (a, b) = (gf.eval(z), gg.eval(z));
        report.sum_slack.push(slack(gsum.eval(z), a + b));
        report.product_slack.push(slack(gprod.eval(z), a * b));
        let dz = gf.deriv(z);
        let resid = (ggrad.eval(z) - dz).abs() / dz.abs().max(f64::MIN_POSITIVE);
        report.derivative_residual = report.derivative_residual.max(if dz == 0.0 && ggrad.eval(z) == 0.0 { 0.0 } else { resid });
    }
    Ok(report)
}

/// Slack of `Gen[F(f)] <= F~(Gen[f])` on the grid for the polynomial
/// `F(x) = sum_n coeffs[n] x^n`, with `F(f)` formed by exact convolution powers.
pub fn check_composition(f: &SpectralField, coeffs: &[f64], zgrid: &[f64]) -> Result<Vec<f64>> {
    check_zgrid(zgrid)?;
    let majorant = MajorantSeries::new(coeffs.to_vec(), f64::INFINITY);
    let mut one = SpectralField::zeros(f.dim(), 0, f.components(), f.transverse())?;
    for c in 0..one.components() {
        one.slot_mut(c, 0).fill(num_complex::Complex64::new(1.0, 0.0));
    }
    let top = coeffs.len().saturating_sub(1) * f.trunc();
    let mut power = one;
    let mut composed = power.resized(top).scaled(coeffs.first().copied().unwrap_or(0.0));
    for &a in coeffs.iter().skip(1) {
        power = convolve(&power, f)?;
        composed = composed.axpy(a, &power.resized(top))?;
    }
    let lhs = fourier_series(&composed)?;
    let gf = fourier_series(f)?;
    zgrid
        .iter()
        .map(|&z| Ok(slack(lhs.eval(z), majorant.eval(gf.eval(z))?)))
        .collect()
}
