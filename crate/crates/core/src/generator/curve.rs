use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::chebyshev::MAX_Y_DERIVATIVE_ORDER;
use crate::spectral::{ChebyshevGrid, SpectralField, Transverse, VelocityGrid};

/// Default Taylor cap for the mixed and kinetic generators.
pub const DEFAULT_TAYLOR_CAP: usize = 10;
/// Default number of z samples on `[0, rho]`.
pub const DEFAULT_Z_POINTS: usize = 65;
/// Largest admissible ratio between the weighted magnitude at the velocity
/// grid edges and its interior maximum.
pub const GRID_DECAY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Fourier,
    Mixed,
    Kinetic,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Fourier => "fourier",
            Variant::Mixed => "mixed",
            Variant::Kinetic => "kinetic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(Variant::Fourier),
            "mixed" => Ok(Variant::Mixed),
            "kinetic" => Ok(Variant::Kinetic),
            other => Err(Error::Parse(format!("unknown generator variant {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurveMeta {
    pub taylor_cap: Option<usize>,
    pub weight_exponent: Option<f64>,
    /// Largest contribution of the last retained Taylor order over the grid;
    /// a truncation diagnostic for the infinite sum over y/v derivatives.
    pub last_term: Option<f64>,
}

/// Samples of a generator function on an ascending z-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorCurve {
    pub variant: Variant,
    pub zgrid: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: CurveMeta,
}

impl GeneratorCurve {
    /// Right end of the z-grid.
    pub fn rho(&self) -> f64 {
        self.zgrid.last().copied().unwrap_or(0.0)
    }

    pub fn is_monotone(&self, tol: f64) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] - tol)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Membership of a field in `X_rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceMembership {
    pub rho: f64,
    pub value: f64,
    pub finite: bool,
}

/// One summand `weight * e^{z |alpha|} z^beta / beta!` of a generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenTerm {
    pub mode_norm: f64,
    pub beta: u32,
    pub weight: f64,
}

/// Finite generator sum of a truncated field. Evaluates the curve and its
/// exact z-derivative anywhere on `z >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSeries {
    pub variant: Variant,
    pub terms: Vec<GenTerm>,
    pub meta: CurveMeta,
}

fn taylor(z: f64, beta: u32) -> f64 {
    let mut t = 1.0;
    for k in 1..=beta {
        t *= z / k as f64;
    }
    t
}

impl GenSeries {
    pub fn eval(&self, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * (z * t.mode_norm).exp() * taylor(z, t.beta))
            .sum()
    }

    /// `d/dz` of [`GenSeries::eval`], differentiated term by term.
    pub fn deriv(&self, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let e = (z * t.mode_norm).exp();
                let mut d = t.mode_norm * e * taylor(z, t.beta);
                if t.beta > 0 {
                    d += e * taylor(z, t.beta - 1);
                }
                t.weight * d
            })
            .sum()
    }

    pub fn curve(&self, zgrid: &[f64]) -> Result<GeneratorCurve> {
        check_zgrid(zgrid)?;
        let mut meta = self.meta;
        if let Some(cap) = meta.taylor_cap {
            let last = zgrid
                .iter()
                .map(|&z| {
                    self.terms
                        .iter()
                        .filter(|t| t.beta as usize == cap)
                        .map(|t| t.weight * (z * t.mode_norm).exp() * taylor(z, t.beta))
                        .sum::<f64>()
                })
                .fold(0.0, f64::max);
            meta.last_term = Some(last);
        }
        Ok(GeneratorCurve {
            variant: self.variant,
            zgrid: zgrid.to_vec(),
            values: zgrid.iter().map(|&z| self.eval(z)).collect(),
            meta,
        })
    }

    pub fn deriv_curve(&self, zgrid: &[f64]) -> Result<Vec<f64>> {
        check_zgrid(zgrid)?;
        Ok(zgrid.iter().map(|&z| self.deriv(z)).collect())
    }

    pub fn membership(&self, rho: f64) -> Result<SpaceMembership> {
        if rho < 0.0 {
            return Err(Error::NegativeZ(rho));
        }
        let value = self.eval(rho);
        Ok(SpaceMembership { rho, value, finite: value.is_finite() })
    }
}

/// `points` uniform samples on `[0, rho]`.
pub fn uniform_zgrid(rho: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "z-grid needs at least two points");
    (0..points).map(|i| rho * i as f64 / (points - 1) as f64).collect()
}

pub fn check_zgrid(zgrid: &[f64]) -> Result<()> {
    if let Some(&z) = zgrid.iter().find(|z| !(**z >= 0.0)) {
        return Err(Error::NegativeZ(z));
    }
    if zgrid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::UnsortedGrid);
    }
    Ok(())
}

/// Fourier generator `sum_alpha e^{z|alpha|} |f_alpha|`, with `|f_alpha|` the
/// Euclidean norm over components.
pub fn fourier_series(f: &SpectralField) -> Result<GenSeries> {
    if !f.transverse().is_none() {
        return Err(Error::UnsupportedLayout(format!(
            "Fourier generator needs a field without transverse grid, got {}",
            f.transverse().kind()
        )));
    }
    let terms = (0..f.mode_count())
        .filter_map(|i| {
            let w = f.mode_weight(i);
            (w > 0.0).then(|| GenTerm { mode_norm: f.mode_at(i).norm(), beta: 0, weight: w })
        })
        .collect();
    Ok(GenSeries { variant: Variant::Fourier, terms, meta: CurveMeta::default() })
}

pub fn gen_fourier(f: &SpectralField, zgrid: &[f64]) -> Result<GeneratorCurve> {
    fourier_series(f)?.curve(zgrid)
}

fn ladder_terms(
    f: &SpectralField,
    cap: usize,
    weight: &[f64],
    ladder: impl Fn(&[Complex64]) -> Vec<Vec<Complex64>>,
) -> Vec<GenTerm> {
    let mut terms = Vec::new();
    for i in 0..f.mode_count() {
        let per_component: Vec<Vec<Vec<Complex64>>> = (0..f.components()).map(|c| ladder(f.slot(c, i))).collect();
        let norm = f.mode_at(i).norm();
        for beta in 0..=cap {
            let w = (0..f.nodes())
                .map(|node| {
                    let mag = per_component
                        .iter()
                        .map(|l| l[beta][node].norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    weight[node] * mag
                })
                .fold(0.0, f64::max);
            if w > 0.0 {
                terms.push(GenTerm { mode_norm: norm, beta: beta as u32, weight: w });
            }
        }
    }
    terms
}

/// Mixed generator for x-Fourier by y-Chebyshev fields:
/// `sum_alpha sum_{beta <= B} e^{z|alpha|} max_y |d_y^beta w_alpha| z^beta / beta!`.
pub fn mixed_series(omega: &SpectralField, grid: &ChebyshevGrid, taylor_cap: usize) -> Result<GenSeries> {
    match omega.transverse() {
        Transverse::ChebyshevY { nodes } if nodes == grid.len() => {}
        other => {
            return Err(Error::UnsupportedLayout(format!(
                "mixed generator needs chebyshev_y with {} nodes, got {}",
                grid.len(),
                other.kind()
            )))
        }
    }
    let limit = MAX_Y_DERIVATIVE_ORDER.min(grid.len() - 1);
    if taylor_cap > limit {
        return Err(Error::TaylorCapTooLarge { cap: taylor_cap, limit });
    }
    let ones = vec![1.0; grid.len()];
    let terms = ladder_terms(omega, taylor_cap, &ones, |v| grid.derivative_ladder(v, taylor_cap));
    Ok(GenSeries {
        variant: Variant::Mixed,
        terms,
        meta: CurveMeta { taylor_cap: Some(taylor_cap), ..CurveMeta::default() },
    })
}

pub fn gen_mixed(omega: &SpectralField, grid: &ChebyshevGrid, zgrid: &[f64], taylor_cap: usize) -> Result<GeneratorCurve> {
    mixed_series(omega, grid, taylor_cap)?.curve(zgrid)
}

/// Fails unless `<v>^m |f|` at both velocity edges is negligible against its
/// maximum over the grid.
pub fn check_velocity_decay(f: &SpectralField, vgrid: &VelocityGrid, m: f64) -> Result<()> {
    let w = vgrid.weight(m);
    let last = vgrid.len() - 1;
    let (mut edge, mut peak): (f64, f64) = (0.0, 0.0);
    for c in 0..f.components() {
        for i in 0..f.mode_count() {
            let s = f.slot(c, i);
            for (node, v) in s.iter().enumerate() {
                let x = w[node] * v.norm();
                peak = peak.max(x);
                if node == 0 || node == last {
                    edge = edge.max(x);
                }
            }
        }
    }
    if peak > 0.0 && edge > GRID_DECAY_TOL * peak {
        return Err(Error::GridNotDecayed { ratio: edge / peak });
    }
    Ok(())
}

pub fn validate_weight(m: f64, dim: usize) -> Result<()> {
    let bound = dim as f64 + 2.0;
    if !(m > bound) {
        return Err(Error::WeightTooSmall { m, bound });
    }
    Ok(())
}

fn check_kinetic_layout(f: &SpectralField, vgrid: &VelocityGrid) -> Result<()> {
    match f.transverse() {
        Transverse::GridV { nodes, half_width } if nodes == vgrid.len() && half_width == vgrid.half_width() => Ok(()),
        other => Err(Error::UnsupportedLayout(format!(
            "kinetic generator needs the matching grid_v layout, got {}",
            other.kind()
        ))),
    }
}

/// Weighted kinetic generator
/// `sum_alpha sum_{beta <= B} e^{z|alpha|} max_v <v>^m |d_v^beta f_alpha| z^beta / beta!`
/// with velocity derivatives by repeated fourth-order differences.
pub fn kinetic_series(f: &SpectralField, vgrid: &VelocityGrid, m: f64, taylor_cap: usize) -> Result<GenSeries> {
    check_kinetic_layout(f, vgrid)?;
    validate_weight(m, f.dim())?;
    check_velocity_decay(f, vgrid, m)?;
    let weight = vgrid.weight(m);
    let terms = ladder_terms(f, taylor_cap, &weight, |v| {
        let mut out = Vec::with_capacity(taylor_cap + 1);
        out.push(v.to_vec());
        for b in 0..taylor_cap {
            let next = vgrid.differentiate(&out[b]);
            out.push(next);
        }
        out
    });
    Ok(GenSeries {
        variant: Variant::Kinetic,
        terms,
        meta: CurveMeta { taylor_cap: Some(taylor_cap), weight_exponent: Some(m), last_term: None },
    })
}

pub fn gen_kinetic(f: &SpectralField, vgrid: &VelocityGrid, m: f64, taylor_cap: usize, zgrid: &[f64]) -> Result<GeneratorCurve> {
    kinetic_series(f, vgrid, m, taylor_cap)?.curve(zgrid)
}
