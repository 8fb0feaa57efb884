use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Power series `F~(x) = sum |a_n| x^n` built from the absolute Taylor
/// coefficients of an analytic nonlinearity `F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorantSeries {
    abs_coeffs: Vec<f64>,
    radius_of_convergence: f64,
}

impl MajorantSeries {
    pub fn new(coeffs: Vec<f64>, radius_of_convergence: f64) -> Self {
        Self {
            abs_coeffs: coeffs.into_iter().map(f64::abs).collect(),
            radius_of_convergence,
        }
    }

    /// `F(x) = x`.
    pub fn identity() -> Self {
        Self::new(vec![0.0, 1.0], f64::INFINITY)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![0.0; degree + 1];
        c[degree] = 1.0;
        Self::new(c, f64::INFINITY)
    }

    /// `F(x) = e^x`, coefficients `1/n!` kept until they underflow.
    pub fn exponential() -> Self {
        let mut c = vec![1.0];
        let mut term: f64 = 1.0;
        for n in 1.. {
            term /= n as f64;
            if term == 0.0 {
                break;
            }
            c.push(term);
        }
        Self::new(c, f64::INFINITY)
    }

    pub fn abs_coeffs(&self) -> &[f64] {
        &self.abs_coeffs
    }

    pub fn radius_of_convergence(&self) -> f64 {
        self.radius_of_convergence
    }

    /// `F~(x)`, summed until the terms drop below `1e-16` of the partial sum
    /// on the decreasing tail.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || x >= self.radius_of_convergence {
            return Err(Error::OutsideConvergence { value: x, radius: self.radius_of_convergence });
        }
        let mut sum = 0.0;
        let mut power = 1.0;
        let mut prev_term = f64::INFINITY;
        for &a in &self.abs_coeffs {
            let term = a * power;
            sum += term;
            if sum > 0.0 && term < 1e-16 * sum && term < prev_term {
                break;
            }
            if term > 0.0 {
                prev_term = term;
            }
            power *= x;
        }
        Ok(sum)
    }

    /// `F~'(x)`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let d: Vec<f64> = self
            .abs_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a * n as f64)
            .collect();
        MajorantSeries { abs_coeffs: d, radius_of_convergence: self.radius_of_convergence }.eval(x)
    }
}

/// Upper bound `F~(Gen[f])` for `Gen[F(f)]`.
pub fn gen_compose_majorant(series: &MajorantSeries, g_value: f64) -> Result<f64> {
    series.eval(g_value)
}
