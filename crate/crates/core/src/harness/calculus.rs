//! Seeded property suite for the generator calculus.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::generator::{check_calculus, check_composition, uniform_zgrid, MajorantSeries};
use crate::generator::calculus::INEQUALITY_TOL;
use crate::spectral::SpectralField;

/// Taylor degree used for `exp` in the composition check.
pub const EXP_DEGREE: usize = 8;
/// Largest cutoff of 2D fields fed to the composition checks.
pub const COMPOSITION_CUTOFF_2D: usize = 8;

/// Random complex trigonometric polynomial: every stored mode gets a uniform
/// phase and magnitude `U(0, 1) e^{-rate |alpha|}`, `rate` in `[0.2, 1)`.
pub fn random_polynomial(dim: usize, n: usize, rng: &mut impl Rng) -> Result<SpectralField> {
    let mut f = SpectralField::scalar(dim, n)?;
    let rate = rng.random_range(0.2..1.0);
    for i in 0..f.mode_count() {
        let r = rng.random_range(0.0..1.0) * (-rate * f.mode_at(i).norm()).exp();
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        f.slot_mut(0, i)[0] = Complex64::from_polar(r, phase);
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalculusSuiteReport {
    pub trials: usize,
    pub min_sum_slack: f64,
    pub min_product_slack: f64,
    pub max_derivative_residual: f64,
    /// Composition slack for `F(x) = x^2`.
    pub min_square_slack: f64,
    /// Composition slack for the degree-[`EXP_DEGREE`] Taylor polynomial of `exp`.
    pub min_exp_slack: f64,
    pub failures: Vec<String>,
}

impl CalculusSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for CalculusSuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "min_sum_slack: {:e}", self.min_sum_slack)?;
        writeln!(f, "min_product_slack: {:e}", self.min_product_slack)?;
        writeln!(f, "max_derivative_residual: {:e}", self.max_derivative_residual)?;
        writeln!(f, "min_square_slack: {:e}", self.min_square_slack)?;
        writeln!(f, "min_exp_slack: {:e}", self.min_exp_slack)?;
        for fail in &self.failures {
            writeln!(f, "failure: {fail}")?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// `trials` random pairs, alternating between one and two dimensions, with
/// cutoffs drawn from `1..=16`; every relation is checked on a 17-point grid
/// over `[0, 1]`.
pub fn calculus_suite(trials: usize, seed: u64) -> Result<CalculusSuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zgrid = uniform_zgrid(1.0, 17);
    let exp_coeffs: Vec<f64> = MajorantSeries::exponential().abs_coeffs()[..=EXP_DEGREE].to_vec();
    let mut rep = CalculusSuiteReport {
        trials,
        min_sum_slack: f64::INFINITY,
        min_product_slack: f64::INFINITY,
        max_derivative_residual: 0.0,
        min_square_slack: f64::INFINITY,
        min_exp_slack: f64::INFINITY,
        failures: Vec::new(),
    };
    let min = |s: &[f64]| s.iter().copied().fold(f64::INFINITY, f64::min);
    for trial in 0..trials {
        let dim = 1 + trial % 2;
        let nf = rng.random_range(1..=16);
        let ng = rng.random_range(1..=16);
        let f = random_polynomial(dim, nf, &mut rng)?;
        let g = random_polynomial(dim, ng, &mut rng)?;
        let c = check_calculus(&f, &g, &zgrid)?;
        rep.min_sum_slack = rep.min_sum_slack.min(c.min_sum_slack());
        rep.min_product_slack = rep.min_product_slack.min(c.min_product_slack());
        rep.max_derivative_residual = rep.max_derivative_residual.max(c.derivative_residual);
        for fail in c.failures() {
            rep.failures.push(format!("trial {trial} (d={dim}): {fail}"));
        }
        // Keep the composition powers small: scale so Gen[f](0) = 1/2, and
        // cap the 2D cutoff so the degree-8 power stays cheap to sum directly.
        let h = if dim == 2 { f.resized(nf.min(COMPOSITION_CUTOFF_2D)) } else { f.clone() };
        let h = h.scaled(0.5 / h.data().iter().map(|v| v.norm()).sum::<f64>().max(f64::MIN_POSITIVE));
        let sq = min(&check_composition(&h, &[0.0, 0.0, 1.0], &zgrid)?);
        let ex = min(&check_composition(&h, &exp_coeffs, &zgrid)?);
        rep.min_square_slack = rep.min_square_slack.min(sq);
        rep.min_exp_slack = rep.min_exp_slack.min(ex);
        if sq < -INEQUALITY_TOL {
            rep.failures.push(format!("trial {trial}: x^2 composition slack {sq:e}"));
        }
        if ex < -INEQUALITY_TOL {
            rep.failures.push(format!("trial {trial}: exp composition slack {ex:e}"));
        }
    }
    Ok(rep)
}
