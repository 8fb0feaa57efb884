//! Truncated Fourier fields on the torus, their exact algebra, and the
//! transverse discretisations used by the channel and kinetic models.

pub mod chebyshev;
pub mod field;
pub mod io;
pub mod ops;
pub mod transform;
pub mod vgrid;

pub use chebyshev::ChebyshevGrid;
pub use field::{Mode, SpectralField, Transverse};
pub use ops::{
    advect, convolve, convolve_into_cutoff, convolve_pseudospectral, derivative, divergence, gradient, leray_project,
    max_mode_divergence, truncate,
};
pub use transform::{evaluate_physical, forward_transform, PhysicalSamples};
pub use vgrid::VelocityGrid;

use crate::error::{Error, Result};

/// Per-mode Dirichlet solve of `d^2 phi_alpha / dy^2 = omega_alpha`,
/// `phi_alpha(+-1) = 0`, for a field on the x-Fourier by y-Chebyshev layout.
pub fn poisson_channel_solve(omega: &SpectralField, grid: &ChebyshevGrid) -> Result<SpectralField> {
    match omega.transverse() {
        Transverse::ChebyshevY { nodes } if nodes == grid.len() => {}
        other => {
            return Err(Error::UnsupportedLayout(format!(
                "channel solve needs chebyshev_y with {} nodes, got {}",
                grid.len(),
                other.kind()
            )))
        }
    }
    let mut phi = omega.clone();
    for c in 0..omega.components() {
        for i in 0..omega.mode_count() {
            let sol = grid.solve_dirichlet(omega.slot(c, i))?;
            phi.slot_mut(c, i).copy_from_slice(&sol);
        }
    }
    Ok(phi)
}

/// Applies `op` to the transverse values of every (component, mode) slot.
pub fn map_transverse(f: &SpectralField, mut op: impl FnMut(&[num_complex::Complex64]) -> Vec<num_complex::Complex64>) -> SpectralField {
    let mut out = f.clone();
    for c in 0..f.components() {
        for i in 0..f.mode_count() {
            let v = op(f.slot(c, i));
            out.slot_mut(c, i).copy_from_slice(&v);
        }
    }
    out
}
