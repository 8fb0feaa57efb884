//! Initial data: named presets and seeded random analytic fields.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::{ModelKind, ModelSpec, StateLayout};
use crate::error::{Error, Result};
use crate::spectral::{truncate, ChebyshevGrid, Mode, SpectralField, Transverse, VelocityGrid};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `sin x` on `T^1`.
pub fn sine(n: usize) -> Result<SpectralField> {
    SpectralField::from_entries(&[(vec![1], c(0.0, -0.5)), (vec![-1], c(0.0, 0.5))], 1, n.max(1))
}

/// `u = (cos x sin y, -sin x cos y)`, a steady Euler flow.
pub fn taylor_green(n: usize) -> Result<SpectralField> {
    let mut u = SpectralField::zeros(2, n.max(1), 2, Transverse::None)?;
    for a in [-1i64, 1] {
        for b in [-1i64, 1] {
            u.at_mut(0, Mode::d2(a, b))[0] = c(0.0, -(b as f64) / 4.0);
            u.at_mut(1, Mode::d2(a, b))[0] = c(0.0, a as f64 / 4.0);
        }
    }
    Ok(u)
}

/// x-independent vorticity `cos(pi y / 2) + y / 2`: a steady shear flow.
pub fn shear(grid: &ChebyshevGrid, n: usize) -> Result<SpectralField> {
    let mut w = SpectralField::zeros(1, n, 1, Transverse::ChebyshevY { nodes: grid.len() })?;
    let profile: Vec<Complex64> = grid.nodes().iter().map(|&y| c((0.5 * PI * y).cos() + 0.5 * y, 0.0)).collect();
    w.at_mut(0, Mode::ZERO).copy_from_slice(&profile);
    Ok(w)
}

/// Unit-mass Maxwellian `e^{-v^2/2} / sqrt(2 pi)` on the grid.
pub fn maxwellian(vgrid: &VelocityGrid) -> Vec<f64> {
    let norm = (2.0 * PI).sqrt();
    vgrid.points().iter().map(|v| (-0.5 * v * v).exp() / norm).collect()
}

/// `(1 + eps cos x) M(v)`.
pub fn perturbed_maxwellian(vgrid: &VelocityGrid, n: usize, eps: f64) -> Result<SpectralField> {
    let mut f = SpectralField::zeros(1, n.max(1), 1, Transverse::GridV { nodes: vgrid.len(), half_width: vgrid.half_width() })?;
    let m = maxwellian(vgrid);
    for (k, scale) in [(0i64, 1.0), (1, 0.5 * eps), (-1, 0.5 * eps)] {
        let slot = f.at_mut(0, Mode::d1(k));
        for (s, v) in slot.iter_mut().zip(&m) {
            *s = c(scale * v, 0.0);
        }
    }
    Ok(f)
}

/// Parameters of a random analytic field: mode magnitudes
/// `amplitude e^{-rate |alpha|}` with seeded uniform phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub rate: f64,
    pub amplitude: f64,
    pub seed: u64,
}

/// Fills `f` with a real-valued random field: every pair `(alpha, -alpha)` gets
/// `value(alpha, rng)` and its conjugate; the mean mode gets the real part.
fn hermitian_fill(f: &mut SpectralField, rng: &mut ChaCha8Rng, mut value: impl FnMut(Mode, &mut ChaCha8Rng) -> Vec<Vec<Complex64>>) {
    for i in 0..f.mode_count() {
        let mode = f.mode_at(i);
        let canonical = mode.get(0) > 0 || (mode.get(0) == 0 && mode.get(1) > 0);
        if !(canonical || mode.is_zero()) {
            continue;
        }
        let vals = value(mode, rng);
        let j = f.mode_index(-mode).expect("box is symmetric");
        for (comp, v) in vals.iter().enumerate() {
            if mode.is_zero() {
                let re: Vec<Complex64> = v.iter().map(|x| c(x.re, 0.0)).collect();
                f.slot_mut(comp, i).copy_from_slice(&re);
            } else {
                f.slot_mut(comp, i).copy_from_slice(v);
                let conj: Vec<Complex64> = v.iter().map(|x| x.conj()).collect();
                f.slot_mut(comp, j).copy_from_slice(&conj);
            }
        }
    }
}

fn phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI))
}

/// Random real-valued analytic field in the model's (unaugmented) layout,
/// projected to `|alpha| <= n`. Vector fields are divergence-free; channel
/// profiles are random quartics in y; kinetic modes are Maxwellian-shaped
/// perturbations of a unit-mass Maxwellian.
pub fn random_field(model: &ModelSpec, n: usize, spec: RandomSpec) -> Result<SpectralField> {
    if !(spec.rate > 0.0) || !(spec.amplitude >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "random data need rate > 0 and amplitude >= 0, got {} and {}",
            spec.rate, spec.amplitude
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mag = |m: Mode| spec.amplitude * (-spec.rate * m.norm()).exp();
    let mut f = SpectralField::zeros(model.dim(), n, model.base_components(), model.transverse())?;
    match (&model.kind, model.layout()) {
        (_, StateLayout::Scalar) => hermitian_fill(&mut f, &mut rng, |m, r| vec![vec![phase(r) * mag(m)]]),
        (_, StateLayout::Vector2) => hermitian_fill(&mut f, &mut rng, |m, r| {
            if m.is_zero() {
                return vec![vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]];
            }
            // u = (d_y psi, -d_x psi) with |u_alpha| = mag.
            let psi = phase(r) * mag(m) / m.norm();
            let i = c(0.0, 1.0);
            vec![vec![i * m.get(1) as f64 * psi], vec![-i * m.get(0) as f64 * psi]]
        }),
        (ModelKind::Hydrostatic { grid }, _) => {
            let ys = grid.nodes().to_vec();
            hermitian_fill(&mut f, &mut rng, |m, r| {
                let coeffs: Vec<f64> = (0..5).map(|k| r.random_range(-1.0..1.0) / (1u64 << k) as f64).collect();
                let p = phase(r) * mag(m);
                vec![ys.iter().map(|&y| p * coeffs.iter().rev().fold(0.0, |acc, a| acc * y + a)).collect()]
            })
        }
        (ModelKind::Kinetic { vgrid, .. }, _) => {
            let mw = maxwellian(vgrid);
            let vs = vgrid.points().to_vec();
            hermitian_fill(&mut f, &mut rng, |m, r| {
                if m.is_zero() {
                    return vec![mw.iter().map(|&x| c(x, 0.0)).collect()];
                }
                let tilt = r.random_range(-0.5..0.5);
                let p = phase(r) * mag(m);
                vec![vs.iter().zip(&mw).map(|(&v, &x)| p * x * (1.0 + tilt * v)).collect()]
            })
        }
        _ => unreachable!("layout follows the model kind"),
    }
    Ok(truncate(&f, n))
}
