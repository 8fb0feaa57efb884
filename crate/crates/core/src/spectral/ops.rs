//! Exact spectral algebra on truncated coefficient tables.

use num_complex::Complex64;

use super::field::{SpectralField, Transverse};
use super::transform::{evaluate_physical, forward_transform, PhysicalSamples};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Projection onto the Euclidean ball `|alpha|_2 <= n`. The result is stored
/// in the box of cutoff `min(f.trunc, n)`.
pub fn truncate(f: &SpectralField, n: usize) -> SpectralField {
    let mut out = if n < f.trunc() { f.resized(n) } else { f.clone() };
    let radius_sq = (n * n) as i64;
    for i in 0..out.mode_count() {
        if out.mode_at(i).norm_sq() > radius_sq {
            for c in 0..out.components() {
                out.slot_mut(c, i).fill(Complex64::default());
            }
        }
    }
    out
}

fn product_layout(f: &SpectralField, g: &SpectralField) -> Result<(usize, Transverse)> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "convolving dim {} with dim {}",
            f.dim(),
            g.dim()
        )));
    }
    let components = match (f.components(), g.components()) {
        (a, b) if a == b => a,
        (1, b) => b,
        (a, 1) => a,
        (a, b) => {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {a}-component and {b}-component fields"
            )))
        }
    };
    let transverse = match (f.transverse(), g.transverse()) {
        (a, b) if a == b => a,
        (Transverse::None, b) => b,
        (a, Transverse::None) => a,
        (a, b) => {
            return Err(Error::DimensionMismatch(format!(
                "transverse layouts {} and {} differ",
                a.kind(),
                b.kind()
            )))
        }
    };
    Ok((components, transverse))
}

/// Coefficients of the pointwise product, `(fg)_alpha = sum_beta f_beta g_{alpha-beta}`,
/// on the enlarged cutoff `N_f + N_g` so no product mode is lost.
pub fn convolve(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    convolve_into_cutoff(f, g, f.trunc() + g.trunc())
}

/// Direct convolution sum restricted to output modes in the box of cutoff
/// `out_trunc`. Transverse values multiply pointwise; a scalar factor or a
/// factor without transverse structure broadcasts.
pub fn convolve_into_cutoff(f: &SpectralField, g: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
    let (components, transverse) = product_layout(f, g)?;
    let mut out = SpectralField::zeros(f.dim(), out_trunc, components, transverse)?;
    let nodes = transverse.nodes();
    let (f_nodes, g_nodes) = (f.nodes(), g.nodes());
    let (no, so) = (out_trunc as i64, out.side() as i64);
    let two_d = f.dim() == 2;

    // Nonzero slots only, as (alpha_1, alpha_2, data offset): sparse data
    // (single modes, Taylor-Green) stays cheap.
    let nonzero = |h: &SpectralField, c: usize| -> Vec<(i64, i64, usize)> {
        (0..h.mode_count())
            .filter(|&i| h.slot(c, i).iter().any(|v| *v != Complex64::default()))
            .map(|i| {
                let m = h.mode_at(i);
                (m.get(0), if two_d { m.get(1) } else { 0 }, (c * h.mode_count() + i) * h.nodes())
            })
            .collect()
    };

    let (fd, gd) = (f.data(), g.data());
    let out_modes = out.mode_count();
    let od = out.data_mut();
    for c in 0..components {
        let cf = if f.components() == 1 { 0 } else { c };
        let cg = if g.components() == 1 { 0 } else { c };
        let fs = nonzero(f, cf);
        let gs = nonzero(g, cg);
        let base = c * out_modes;
        for &(b1, b2, ob) in &fs {
            for &(g1, g2, og) in &gs {
                let (o1, o2) = (b1 + g1, b2 + g2);
                if o1.abs() > no || o2.abs() > no {
                    continue;
                }
                let io = if two_d { (o1 + no) * so + o2 + no } else { o1 + no } as usize;
                let dst = (base + io) * nodes;
                if nodes == 1 {
                    od[dst] += fd[ob] * gd[og];
                    continue;
                }
                for node in 0..nodes {
                    let a = fd[ob + if f_nodes == 1 { 0 } else { node }];
                    let b = gd[og + if g_nodes == 1 { 0 } else { node }];
                    od[dst + node] += a * b;
                }
            }
        }
    }
    Ok(out)
}

/// Same sum as [`convolve_into_cutoff`], via sampling on a grid too fine to
/// alias into the output box. Much faster for dense 2D tables, but the
/// rounding error is absolute (about `1e-16` times the largest coefficient)
/// on every mode, so tiny high modes lose all relative accuracy and
/// generators at `z > 0` amplify that noise by `e^{z |alpha|}`.
pub fn convolve_pseudospectral(f: &SpectralField, g: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
    let (components, transverse) = product_layout(f, g)?;
    let points = (f.trunc() + g.trunc() + out_trunc + 1).max(2 * out_trunc + 1);
    let sf = evaluate_physical(f, points)?;
    let sg = evaluate_physical(g, points)?;
    let nodes = transverse.nodes();
    let grid_len = sf.grid_len();
    let mut values = vec![Complex64::default(); components * grid_len * nodes];
    for c in 0..components {
        let cf = if f.components() == 1 { 0 } else { c };
        let cg = if g.components() == 1 { 0 } else { c };
        for p in 0..grid_len {
            for node in 0..nodes {
                let a = sf.value(cf, p, if sf.nodes == 1 { 0 } else { node });
                let b = sg.value(cg, p, if sg.nodes == 1 { 0 } else { node });
                values[(c * grid_len + p) * nodes + node] = a * b;
            }
        }
    }
    let product = PhysicalSamples { dim: f.dim(), points, components, nodes, values };
    forward_transform(&product, out_trunc, transverse)
}

/// Spectral derivative along a periodic axis: multiplies `f_alpha` by `i alpha_axis`.
pub fn derivative(f: &SpectralField, axis: usize) -> Result<SpectralField> {
    if axis >= f.dim() {
        return Err(Error::AxisOutOfRange { axis, dim: f.dim() });
    }
    let mut out = f.clone();
    for i in 0..out.mode_count() {
        let factor = I * out.mode_at(i).get(axis) as f64;
        for c in 0..out.components() {
            out.slot_mut(c, i).iter_mut().for_each(|v| *v *= factor);
        }
    }
    Ok(out)
}

/// Gradient of a scalar field as a `dim`-component field.
pub fn gradient(f: &SpectralField) -> Result<SpectralField> {
    if f.components() != 1 {
        return Err(Error::DimensionMismatch("gradient needs a scalar field".into()));
    }
    let parts = (0..f.dim()).map(|a| derivative(f, a)).collect::<Result<Vec<_>>>()?;
    SpectralField::stack(&parts)
}

fn require_plane_vector(u: &SpectralField) -> Result<()> {
    if u.dim() != 2 || u.components() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 2-component field on T^2, got dim {} with {} components",
            u.dim(),
            u.components()
        )));
    }
    Ok(())
}

/// Mode-wise Leray projection `(P_alpha)_{jk} = delta_jk - alpha_j alpha_k / |alpha|^2`.
/// The mean mode passes through unchanged.
pub fn leray_project(u: &SpectralField) -> Result<SpectralField> {
    require_plane_vector(u)?;
    let mut out = u.clone();
    for i in 0..u.mode_count() {
        let mode = u.mode_at(i);
        if mode.is_zero() {
            continue;
        }
        let (a1, a2) = (mode.get(0) as f64, mode.get(1) as f64);
        let n2 = a1 * a1 + a2 * a2;
        for node in 0..u.nodes() {
            let u1 = u.slot(0, i)[node];
            let u2 = u.slot(1, i)[node];
            let proj = (u1 * a1 + u2 * a2) / n2;
            out.slot_mut(0, i)[node] = u1 - proj * a1;
            out.slot_mut(1, i)[node] = u2 - proj * a2;
        }
    }
    Ok(out)
}

/// Divergence of a vector field with `components == dim`.
pub fn divergence(u: &SpectralField) -> Result<SpectralField> {
    if u.components() != u.dim() {
        return Err(Error::DimensionMismatch("divergence needs components == dim".into()));
    }
    let mut out = derivative(&u.component(0), 0)?;
    for axis in 1..u.dim() {
        out = out.add(&derivative(&u.component(axis), axis)?)?;
    }
    Ok(out)
}

/// Largest `|alpha . u_alpha|` over all stored modes, i.e. the sup of the
/// divergence coefficients.
pub fn max_mode_divergence(u: &SpectralField) -> Result<f64> {
    Ok(divergence(u)?.max_abs())
}

/// `(u . nabla) v` truncated to the box of cutoff `out_trunc`: for every
/// component `j` of `v`, `sum_k u_k d_k v_j`.
pub fn advect(u: &SpectralField, v: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
    if u.components() != u.dim() {
        return Err(Error::DimensionMismatch("advecting field needs components == dim".into()));
    }
    let mut parts = Vec::with_capacity(v.components());
    for j in 0..v.components() {
        let vj = v.component(j);
        let mut acc: Option<SpectralField> = None;
        for k in 0..u.dim() {
            let term = convolve_into_cutoff(&u.component(k), &derivative(&vj, k)?, out_trunc)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        parts.push(acc.expect("dim >= 1"));
    }
    SpectralField::stack(&parts)
}
