//! Uniform-grid sampling of truncated Fourier series and its inverse.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::field::SpectralField;
use crate::error::{Error, Result};

/// Point values on the uniform grid `x_j = 2 pi j / n` (per periodic axis),
/// laid out as `[component][grid point][transverse node]` with the grid
/// point index row-major over axes.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalSamples {
    pub dim: usize,
    pub points: usize,
    pub components: usize,
    pub nodes: usize,
    pub values: Vec<Complex64>,
}

impl PhysicalSamples {
    pub fn grid_len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn value(&self, component: usize, point: usize, node: usize) -> Complex64 {
        self.values[(component * self.grid_len() + point) * self.nodes + node]
    }

    /// Grid coordinates of point index `p`.
    pub fn coords(&self, p: usize) -> [f64; 2] {
        let h = 2.0 * std::f64::consts::PI / self.points as f64;
        if self.dim == 1 {
            [h * p as f64, 0.0]
        } else {
            [h * (p / self.points) as f64, h * (p % self.points) as f64]
        }
    }
}

fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// Runs `pass` over every line of a `points^dim` array along `axis`.
fn for_each_line(buf: &mut [Complex64], points: usize, dim: usize, axis: usize, mut pass: impl FnMut(&mut [Complex64])) {
    if dim == 1 {
        pass(buf);
        return;
    }
    let mut line = vec![Complex64::default(); points];
    for other in 0..points {
        for (j, slot) in line.iter_mut().enumerate() {
            let idx = if axis == 0 { j * points + other } else { other * points + j };
            *slot = buf[idx];
        }
        pass(&mut line);
        for (j, v) in line.iter().enumerate() {
            let idx = if axis == 0 { j * points + other } else { other * points + j };
            buf[idx] = *v;
        }
    }
}

/// Pointwise sums `sum_alpha f_alpha e^{i alpha . x}` on a uniform grid with
/// `points` samples per axis.
pub fn evaluate_physical(f: &SpectralField, points: usize) -> Result<PhysicalSamples> {
    if points < 2 * f.trunc() + 1 {
        return Err(Error::GridTooCoarse { points, trunc: f.trunc() });
    }
    let dim = f.dim();
    let grid_len = points.pow(dim as u32);
    let nodes = f.nodes();
    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(points);
    let mut values = vec![Complex64::default(); f.components() * grid_len * nodes];
    let mut buf = vec![Complex64::default(); grid_len];
    for c in 0..f.components() {
        for node in 0..nodes {
            buf.fill(Complex64::default());
            for i in 0..f.mode_count() {
                let m = f.mode_at(i);
                let idx = if dim == 1 {
                    wrap(m.get(0), points)
                } else {
                    wrap(m.get(0), points) * points + wrap(m.get(1), points)
                };
                buf[idx] += f.slot(c, i)[node];
            }
            for axis in 0..dim {
                for_each_line(&mut buf, points, dim, axis, |line| ifft.process(line));
            }
            for (p, v) in buf.iter().enumerate() {
                values[(c * grid_len + p) * nodes + node] = *v;
            }
        }
    }
    Ok(PhysicalSamples { dim, points, components: f.components(), nodes, values })
}

/// Discrete Fourier coefficients of uniform samples, kept for modes inside
/// the box of cutoff `trunc`. Inverse of [`evaluate_physical`] when the grid
/// resolves the cutoff.
pub fn forward_transform(
    samples: &PhysicalSamples,
    trunc: usize,
    transverse: super::field::Transverse,
) -> Result<SpectralField> {
    if samples.points < 2 * trunc + 1 {
        return Err(Error::GridTooCoarse { points: samples.points, trunc });
    }
    if transverse.nodes() != samples.nodes {
        return Err(Error::DimensionMismatch("transverse node count differs from samples".into()));
    }
    let (dim, points) = (samples.dim, samples.points);
    let grid_len = samples.grid_len();
    let mut out = SpectralField::zeros(dim, trunc, samples.components, transverse)?;
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(points);
    let norm = 1.0 / grid_len as f64;
    let mut buf = vec![Complex64::default(); grid_len];
    for c in 0..samples.components {
        for node in 0..samples.nodes {
            for (p, slot) in buf.iter_mut().enumerate() {
                *slot = samples.value(c, p, node);
            }
            for axis in 0..dim {
                for_each_line(&mut buf, points, dim, axis, |line| fft.process(line));
            }
            for i in 0..out.mode_count() {
                let m = out.mode_at(i);
                let idx = if dim == 1 {
                    wrap(m.get(0), points)
                } else {
                    wrap(m.get(0), points) * points + wrap(m.get(1), points)
                };
                out.slot_mut(c, i)[node] = buf[idx] * norm;
            }
        }
    }
    Ok(out)
}
