//! Chebyshev-Gauss-Lobatto collocation on `[-1, 1]` for the channel direction.

use nalgebra::{DMatrix, DVector, LU, Dyn};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default number of collocation nodes in the channel direction.
pub const DEFAULT_Y_NODES: usize = 33;

/// Highest y-derivative order considered numerically meaningful on the
/// collocation grid.
pub const MAX_Y_DERIVATIVE_ORDER: usize = 12;

/// Relative size below which Chebyshev coefficients are treated as rounding
/// noise before repeated differentiation.
const CHOP: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct ChebyshevGrid {
    nodes: Vec<f64>,
    diff: DMatrix<f64>,
    weights: Vec<f64>,
    poisson: LU<f64, Dyn, Dyn>,
}

impl ChebyshevGrid {
    /// Grid with `count` nodes `y_j = cos(pi j / (count - 1))`.
    pub fn new(count: usize) -> Result<Self> {
        if count < 8 {
            return Err(Error::DimensionMismatch(format!(
                "channel solver needs at least 8 Chebyshev nodes, got {count}"
            )));
        }
        let n = count - 1;
        let nodes: Vec<f64> = (0..=n)
            .map(|j| (std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();

        let cbar = |j: usize| if j == 0 || j == n { 2.0 } else { 1.0 };
        let sign = |j: usize| if j % 2 == 0 { 1.0 } else { -1.0 };
        let mut diff = DMatrix::<f64>::zeros(count, count);
        for i in 0..count {
            for j in 0..count {
                if i != j {
                    diff[(i, j)] = cbar(i) / cbar(j) * sign(i + j) / (nodes[i] - nodes[j]);
                }
            }
            // negative-sum trick for the diagonal
            let row: f64 = (0..count).filter(|&j| j != i).map(|j| diff[(i, j)]).sum();
            diff[(i, i)] = -row;
        }

        let second = &diff * &diff;
        let interior = second.view((1, 1), (n - 1, n - 1)).into_owned();
        let poisson = interior.lu();
        if poisson.determinant().abs() < f64::MIN_POSITIVE {
            return Err(Error::SingularSystem("interior second-derivative block".into()));
        }

        Ok(Self { weights: clenshaw_curtis(n), nodes, diff, poisson })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn diff_matrix(&self) -> &DMatrix<f64> {
        &self.diff
    }

    /// Clenshaw-Curtis quadrature weights at the nodes.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, values: &[Complex64]) -> Complex64 {
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    /// First derivative by the collocation matrix.
    pub fn differentiate(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| values[j] * self.diff[(i, j)]).sum())
            .collect()
    }

    /// Solves `phi'' = omega` with `phi(+-1) = 0` by collocation at the
    /// interior nodes. The boundary entries of `omega` are ignored.
    pub fn solve_dirichlet(&self, omega: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.len();
        if omega.len() != n {
            return Err(Error::DimensionMismatch("omega length differs from node count".into()));
        }
        let rhs_re = DVector::from_iterator(n - 2, omega[1..n - 1].iter().map(|v| v.re));
        let rhs_im = DVector::from_iterator(n - 2, omega[1..n - 1].iter().map(|v| v.im));
        let sol_re = self
            .poisson
            .solve(&rhs_re)
            .ok_or_else(|| Error::SingularSystem("LU solve failed".into()))?;
        let sol_im = self
            .poisson
            .solve(&rhs_im)
            .ok_or_else(|| Error::SingularSystem("LU solve failed".into()))?;
        let mut phi = vec![Complex64::default(); n];
        for k in 0..n - 2 {
            phi[k + 1] = Complex64::new(sol_re[k], sol_im[k]);
        }
        Ok(phi)
    }

    /// Chebyshev coefficients `a_k` of the interpolant through the node values.
    pub fn coefficients(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = self.len() - 1;
        let cbar = |j: usize| if j == 0 || j == n { 2.0 } else { 1.0 };
        (0..=n)
            .map(|k| {
                let s: Complex64 = (0..=n)
                    .map(|j| values[j] * ((std::f64::consts::PI * (j * k) as f64 / n as f64).cos() / cbar(j)))
                    .sum();
                s * (2.0 / (n as f64 * cbar(k)))
            })
            .collect()
    }

    fn evaluate_coefficients(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let n = self.len() - 1;
        (0..=n)
            .map(|j| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * (std::f64::consts::PI * (j * k) as f64 / n as f64).cos())
                    .sum()
            })
            .collect()
    }

    /// Node values of the first `max_order + 1` derivatives (order 0 included)
    /// of the interpolant. Coefficients below `1e-13` of the largest are
    /// discarded first so repeated differentiation does not amplify rounding.
    pub fn derivative_ladder(&self, values: &[Complex64], max_order: usize) -> Vec<Vec<Complex64>> {
        let mut coeffs = self.coefficients(values);
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for c in coeffs.iter_mut() {
            if c.norm() < CHOP * scale {
                *c = Complex64::default();
            }
        }
        let mut out = Vec::with_capacity(max_order + 1);
        out.push(values.to_vec());
        for _ in 0..max_order {
            coeffs = differentiate_coefficients(&coeffs);
            out.push(self.evaluate_coefficients(&coeffs));
        }
        out
    }
}

fn differentiate_coefficients(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let mut b = vec![Complex64::default(); n + 1];
    if n == 0 {
        return b;
    }
    b[n - 1] = a[n] * (2.0 * n as f64);
    for k in (1..n).rev() {
        let next = if k < n { b[k + 1] } else { Complex64::default() };
        b[k - 1] = next + a[k] * (2.0 * k as f64);
    }
    b[0] *= 0.5;
    b
}

fn clenshaw_curtis(n: usize) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let theta: Vec<f64> = (0..=n).map(|j| pi * j as f64 / n as f64).collect();
    let mut w = vec![0.0; n + 1];
    let mut v = vec![1.0; n - 1];
    if n % 2 == 0 {
        w[0] = 1.0 / ((n * n - 1) as f64);
        w[n] = w[0];
        for k in 1..n / 2 {
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= 2.0 * (2.0 * k as f64 * theta[i + 1]).cos() / ((4 * k * k - 1) as f64);
            }
        }
        for (i, vi) in v.iter_mut().enumerate() {
            *vi -= (n as f64 * theta[i + 1]).cos() / ((n * n - 1) as f64);
        }
    } else {
        w[0] = 1.0 / ((n * n) as f64);
        w[n] = w[0];
        for k in 1..=(n - 1) / 2 {
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= 2.0 * (2.0 * k as f64 * theta[i + 1]).cos() / ((4 * k * k - 1) as f64);
            }
        }
    }
    for (i, vi) in v.iter().enumerate() {
        w[i + 1] = 2.0 * vi / n as f64;
    }
    w
}
