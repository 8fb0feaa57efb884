//! Uniform velocity grid with fourth-order finite differences and trapezoid
//! quadrature.

use num_complex::Complex64;

pub const DEFAULT_V_NODES: usize = 129;
pub const DEFAULT_V_HALF_WIDTH: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct VelocityGrid {
    half_width: f64,
    points: Vec<f64>,
}

impl VelocityGrid {
    pub fn new(nodes: usize, half_width: f64) -> Self {
        assert!(nodes >= 5, "velocity grid needs at least 5 nodes");
        let h = 2.0 * half_width / (nodes - 1) as f64;
        let points = (0..nodes).map(|j| -half_width + h * j as f64).collect();
        Self { half_width, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.len() - 1) as f64
    }

    /// `<v>^m = (1 + v^2)^{m/2}` at every node.
    pub fn weight(&self, m: f64) -> Vec<f64> {
        self.points.iter().map(|v| (1.0 + v * v).powf(0.5 * m)).collect()
    }

    /// Centred fourth-order difference; values beyond the grid are taken as zero.
    pub fn differentiate(&self, f: &[Complex64]) -> Vec<Complex64> {
        let n = f.len();
        let at = |j: isize| -> Complex64 {
            if j < 0 || j as usize >= n {
                Complex64::default()
            } else {
                f[j as usize]
            }
        };
        let scale = 1.0 / (12.0 * self.spacing());
        (0..n as isize)
            .map(|j| (at(j - 2) - at(j - 1) * 8.0 + at(j + 1) * 8.0 - at(j + 2)) * scale)
            .collect()
    }

    pub fn trapezoid(&self, f: &[Complex64]) -> Complex64 {
        let n = f.len();
        let inner: Complex64 = f[1..n - 1].iter().sum();
        (inner + (f[0] + f[n - 1]) * 0.5) * self.spacing()
    }

    pub fn trapezoid_real(&self, f: &[f64]) -> f64 {
        let n = f.len();
        let inner: f64 = f[1..n - 1].iter().sum();
        (inner + 0.5 * (f[0] + f[n - 1])) * self.spacing()
    }
}
