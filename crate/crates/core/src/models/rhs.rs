//! Right-hand sides `A(u, grad u)` of the four model equations.
//!
//! Every function takes the output cutoff explicitly: products are formed only
//! for output modes in the box of that cutoff. Passing the sum of the input
//! cutoffs gives the exact (unprojected) right-hand side.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    advect, convolve_into_cutoff, derivative, leray_project, map_transverse, max_mode_divergence,
    poisson_channel_solve, ChebyshevGrid, SpectralField, Transverse, VelocityGrid,
};

/// Inputs with `max |alpha . u_alpha|` above this (relative to `max |u_alpha|`)
/// are rejected by [`euler_rhs`].
pub const DIVERGENCE_TOL: f64 = 1e-10;

/// `-u d_x u` for a scalar field on `T^1`.
pub fn burgers_rhs(u: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
    if u.dim() != 1 || u.components() != 1 || !u.transverse().is_none() {
        return Err(Error::DimensionMismatch("Burgers needs a scalar field on T^1".into()));
    }
    Ok(convolve_into_cutoff(u, &derivative(u, 0)?, out_trunc)?.scaled(-1.0))
}

/// `d_x u`, a linear test model whose flow is an exact phase rotation.
pub fn linear_advection_rhs(u: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
    Ok(derivative(u, 0)?.resized(out_trunc))
}

/// `-P(u . grad u)` for a divergence-free velocity on `T^2`.
pub fn euler_rhs(u: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
    let div = max_mode_divergence(u)?;
    if div > DIVERGENCE_TOL * u.max_abs().max(1.0) {
        return Err(Error::NotDivergenceFree(div));
    }
    Ok(leray_project(&advect(u, u, out_trunc)?)?.scaled(-1.0))
}

fn require_channel(omega: &SpectralField, grid: &ChebyshevGrid) -> Result<()> {
    match omega.transverse() {
        Transverse::ChebyshevY { nodes } if nodes == grid.len() && omega.dim() == 1 && omega.components() == 1 => Ok(()),
        _ => Err(Error::UnsupportedLayout(format!(
            "hydrostatic model needs a scalar x-Fourier by {}-node chebyshev_y field",
            grid.len()
        ))),
    }
}

/// Channel velocity `(u1, u2) = (d_y phi, -d_x phi)` with `d_y^2 phi = omega`,
/// `phi(+-1) = 0`.
pub fn channel_velocity(omega: &SpectralField, grid: &ChebyshevGrid) -> Result<(SpectralField, SpectralField)> {
    require_channel(omega, grid)?;
    let phi = poisson_channel_solve(omega, grid)?;
    let u1 = map_transverse(&phi, |v| grid.differentiate(v));
    let u2 = derivative(&phi, 0)?.scaled(-1.0);
    Ok((u1, u2))
}

/// `-(u1 d_x omega + u2 d_y omega)`; y-products are pointwise at the nodes.
pub fn hydrostatic_rhs(omega: &SpectralField, grid: &ChebyshevGrid, out_trunc: usize) -> Result<SpectralField> {
    let (u1, u2) = channel_velocity(omega, grid)?;
    let dx = derivative(omega, 0)?;
    let dy = map_transverse(omega, |v| grid.differentiate(v));
    let a = convolve_into_cutoff(&u1, &dx, out_trunc)?;
    let b = convolve_into_cutoff(&u2, &dy, out_trunc)?;
    Ok(a.add(&b)?.scaled(-1.0))
}

/// Potential of a kinetic model, as a scalar x-Fourier field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Potential {
    /// `phi = int f dv - 1`.
    DiracBenney,
    /// `-phi'' = (int f v^2 dv)''` on `T^1`, i.e. `phi_alpha = -int f_alpha v^2 dv`, `phi_0 = 0`.
    IncompressibleEuler,
}

impl Potential {
    pub fn name(self) -> &'static str {
        match self {
            Potential::DiracBenney => "vdb",
            Potential::IncompressibleEuler => "kie",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "vdb" => Ok(Potential::DiracBenney),
            "kie" => Ok(Potential::IncompressibleEuler),
            other => Err(Error::Parse(format!("unknown potential {other:?}"))),
        }
    }
}

fn require_kinetic(f: &SpectralField, vgrid: &VelocityGrid) -> Result<()> {
    match f.transverse() {
        Transverse::GridV { nodes, half_width }
            if nodes == vgrid.len() && half_width == vgrid.half_width() && f.dim() == 1 && f.components() == 1 =>
        {
            Ok(())
        }
        _ => Err(Error::UnsupportedLayout("kinetic model needs a scalar x-Fourier by grid_v field".into())),
    }
}

/// Edge magnitudes must be negligible for the zero-padded differences and the
/// truncated quadrature to be meaningful.
fn check_decay(f: &SpectralField) -> Result<()> {
    let peak = f.max_abs();
    if peak == 0.0 {
        return Ok(());
    }
    let last = f.nodes() - 1;
    let edge = (0..f.mode_count())
        .map(|i| {
            let s = f.slot(0, i);
            s[0].norm().max(s[last].norm())
        })
        .fold(0.0, f64::max);
    if edge > crate::generator::curve::GRID_DECAY_TOL * peak {
        return Err(Error::GridNotDecayed { ratio: edge / peak });
    }
    Ok(())
}

/// `phi_alpha = int f_alpha dv`, with `phi_0 = int f_0 dv - 1`.
pub fn vdb_potential(f: &SpectralField, vgrid: &VelocityGrid) -> Result<SpectralField> {
    require_kinetic(f, vgrid)?;
    check_decay(f)?;
    let mut phi = SpectralField::scalar(1, f.trunc())?;
    for i in 0..f.mode_count() {
        let mut v = vgrid.trapezoid(f.slot(0, i));
        if f.mode_at(i).is_zero() {
            v -= 1.0;
        }
        phi.slot_mut(0, i)[0] = v;
    }
    Ok(phi)
}

/// `phi_alpha = -int f_alpha v^2 dv` for `alpha != 0`, `phi_0 = 0`.
pub fn kie_potential(f: &SpectralField, vgrid: &VelocityGrid) -> Result<SpectralField> {
    require_kinetic(f, vgrid)?;
    check_decay(f)?;
    let v2: Vec<f64> = vgrid.points().iter().map(|v| v * v).collect();
    let mut phi = SpectralField::scalar(1, f.trunc())?;
    for i in 0..f.mode_count() {
        if f.mode_at(i).is_zero() {
            continue;
        }
        let moment: Vec<Complex64> = f.slot(0, i).iter().zip(&v2).map(|(a, w)| a * w).collect();
        phi.slot_mut(0, i)[0] = -vgrid.trapezoid(&moment);
    }
    Ok(phi)
}

/// `-v d_x f + d_x phi d_v f` with the chosen potential.
pub fn kinetic_rhs(f: &SpectralField, vgrid: &VelocityGrid, potential: Potential, out_trunc: usize) -> Result<SpectralField> {
    let phi = match potential {
        Potential::DiracBenney => vdb_potential(f, vgrid)?,
        Potential::IncompressibleEuler => kie_potential(f, vgrid)?,
    };
    let dv = map_transverse(f, |s| vgrid.differentiate(s));
    let force = convolve_into_cutoff(&derivative(&phi, 0)?, &dv, out_trunc)?;
    let mut free = derivative(f, 0)?.resized(out_trunc);
    for i in 0..free.mode_count() {
        for (s, v) in free.slot_mut(0, i).iter_mut().zip(vgrid.points()) {
            *s *= -v;
        }
    }
    force.add(&free)
}

/// Vlasov-Dirac-Benney right-hand side.
pub fn vdb_rhs(f: &SpectralField, vgrid: &VelocityGrid, out_trunc: usize) -> Result<SpectralField> {
    kinetic_rhs(f, vgrid, Potential::DiracBenney, out_trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{evaluate_physical, Mode};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn burgers_sine() {
        let u = SpectralField::from_entries(&[(vec![1], c(0.0, -0.5)), (vec![-1], c(0.0, 0.5))], 1, 1).unwrap();
        let r = burgers_rhs(&u, 2).unwrap();
        // -sin x cos x = -(1/2) sin 2x, sin 2x = (e^{2ix} - e^{-2ix}) / 2i.
        assert!((r.coeff(Mode::d1(2)) - c(0.0, 0.25)).norm() < 1e-15);
        assert!((r.coeff(Mode::d1(-2)) - c(0.0, -0.25)).norm() < 1e-15);
        assert!(r.coeff(Mode::ZERO).norm() < 1e-15);
    }

    #[test]
    fn burgers_complex_exponential() {
        let u = SpectralField::from_entries(&[(vec![1], c(1.0, 0.0))], 1, 1).unwrap();
        let r = burgers_rhs(&u, 2).unwrap();
        assert_eq!(r.coeff(Mode::d1(2)), c(0.0, -1.0));
    }

    #[test]
    fn burgers_matches_physical_product() {
        let u = SpectralField::from_entries(
            &[(vec![1], c(0.3, -0.2)), (vec![-1], c(0.3, 0.2)), (vec![2], c(0.1, 0.05)), (vec![-2], c(0.1, -0.05))],
            1,
            2,
        )
        .unwrap();
        let r = burgers_rhs(&u, 4).unwrap();
        let pts = 32;
        let su = evaluate_physical(&u, pts).unwrap();
        let sd = evaluate_physical(&derivative(&u, 0).unwrap(), pts).unwrap();
        let sr = evaluate_physical(&r, pts).unwrap();
        for p in 0..pts {
            let want = -su.value(0, p, 0) * sd.value(0, p, 0);
            assert!((sr.value(0, p, 0) - want).norm() < 1e-13);
        }
    }

    #[test]
    fn constant_is_steady() {
        let u = SpectralField::from_entries(&[(vec![0], c(2.0, 0.0))], 1, 3).unwrap();
        assert_eq!(burgers_rhs(&u, 6).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn euler_rejects_divergent_input() {
        let mut u = SpectralField::zeros(2, 1, 2, Transverse::None).unwrap();
        u.at_mut(0, Mode::d2(1, 0))[0] = c(1.0, 0.0);
        assert!(matches!(euler_rhs(&u, 2), Err(Error::NotDivergenceFree(_))));
    }

    #[test]
    fn potentials_of_x_independent_data() {
        let g = VelocityGrid::new(65, 8.0);
        let mut f = SpectralField::zeros(1, 2, 1, Transverse::GridV { nodes: 65, half_width: 8.0 }).unwrap();
        let norm = (2.0 * std::f64::consts::PI).sqrt();
        let vals: Vec<Complex64> = g.points().iter().map(|v| c((-0.5 * v * v).exp() / norm, 0.0)).collect();
        f.at_mut(0, Mode::ZERO).copy_from_slice(&vals);
        assert!(kie_potential(&f, &g).unwrap().max_abs() == 0.0);
        assert!(vdb_potential(&f, &g).unwrap().max_abs() < 1e-12);
        assert!(vdb_rhs(&f, &g, 2).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn kinetic_rejects_undecayed_data() {
        let g = VelocityGrid::new(17, 2.0);
        let mut f = SpectralField::zeros(1, 1, 1, Transverse::GridV { nodes: 17, half_width: 2.0 }).unwrap();
        f.at_mut(0, Mode::ZERO).fill(c(1.0, 0.0));
        assert!(matches!(vdb_rhs(&f, &g, 1), Err(Error::GridNotDecayed { .. })));
    }
}
