use num_complex::Complex64;

use super::rhs::{burgers_rhs, euler_rhs, hydrostatic_rhs, kinetic_rhs, linear_advection_rhs, Potential};
use crate::error::{Error, Result};
use crate::generator::{fourier_series, kinetic_series, mixed_series, GenSeries, MajorantSeries, DEFAULT_TAYLOR_CAP};
use crate::spectral::{derivative, map_transverse, truncate, ChebyshevGrid, SpectralField, Transverse, VelocityGrid};

/// Declared Euler constant: the Leray entries are bounded by 1 and the row
/// sums by 2; the larger value is declared.
pub const EULER_C0: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateLayout {
    Scalar,
    Vector2,
    Channel,
    Kinetic,
}

impl StateLayout {
    pub fn name(self) -> &'static str {
        match self {
            StateLayout::Scalar => "scalar",
            StateLayout::Vector2 => "vector2",
            StateLayout::Channel => "x-fourier*y-cheb",
            StateLayout::Kinetic => "x-fourier*v-grid",
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModelKind {
    Burgers,
    LinearAdvection,
    Euler,
    Hydrostatic { grid: ChebyshevGrid },
    Kinetic { vgrid: VelocityGrid, potential: Potential, weight: f64 },
}

/// A right-hand side with the constants under which its generator obeys
/// `Gen[A] <= C0 F(Gen) (1 + d_z Gen)`.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub name: String,
    pub kind: ModelKind,
    pub c0: f64,
    pub series: MajorantSeries,
    /// Evolve `U = [f, d_x f, .., d_y f or d_v f]` instead of `f`.
    pub augmented: bool,
    /// Taylor cap for the mixed and kinetic generators.
    pub taylor_cap: usize,
}

/// Discrete bound `C` in `|phi| + |phi'| + |phi''| <= C |omega|` (sup norms over
/// the nodes) for the Dirichlet solve on `grid`. `phi''` is measured at the
/// interior nodes, where the collocated equation holds.
pub fn elliptic_constant(grid: &ChebyshevGrid) -> Result<f64> {
    let n = grid.len();
    let mut rows = vec![[0.0f64; 3]; n];
    for j in 1..n - 1 {
        let mut e = vec![Complex64::default(); n];
        e[j] = Complex64::new(1.0, 0.0);
        let phi = grid.solve_dirichlet(&e)?;
        let d1 = grid.differentiate(&phi);
        let d2 = grid.differentiate(&d1);
        for i in 0..n {
            rows[i][0] += phi[i].norm();
            rows[i][1] += d1[i].norm();
            rows[i][2] += d2[i].norm();
        }
    }
    let interior = &rows[1..n - 1];
    Ok((0..3)
        .map(|k| {
            let rows = if k == 2 { interior } else { &rows[..] };
            rows.iter().map(|r| r[k]).fold(0.0, f64::max)
        })
        .sum())
}

/// `C` in `|phi_alpha| <= C |<v>^m f_alpha|_inf`: the quadrature of `<v>^{-m}`
/// (times `v^2` for the incompressible-Euler potential).
pub fn kinetic_constant(vgrid: &VelocityGrid, potential: Potential, m: f64) -> f64 {
    let w: Vec<f64> = vgrid
        .points()
        .iter()
        .map(|v| {
            let base = (1.0 + v * v).powf(-0.5 * m);
            match potential {
                Potential::DiracBenney => base,
                Potential::IncompressibleEuler => base * v * v,
            }
        })
        .collect();
    vgrid.trapezoid_real(&w)
}

impl ModelSpec {
    pub fn burgers() -> Self {
        Self::plain("burgers", ModelKind::Burgers, 1.0, MajorantSeries::identity())
    }

    /// `d_t u = d_x u`, certified with `F = 1`.
    pub fn linear_advection() -> Self {
        Self::plain("linear_advection", ModelKind::LinearAdvection, 1.0, MajorantSeries::new(vec![1.0], f64::INFINITY))
    }

    pub fn euler() -> Self {
        Self::plain("euler", ModelKind::Euler, EULER_C0, MajorantSeries::identity())
    }

    /// C0 is the measured discrete elliptic constant.
    pub fn hydrostatic(grid: ChebyshevGrid) -> Result<Self> {
        let c0 = elliptic_constant(&grid)?;
        Ok(Self::plain("hydrostatic", ModelKind::Hydrostatic { grid }, c0, MajorantSeries::identity()))
    }

    /// C0 is the velocity quadrature constant of the potential.
    pub fn kinetic(vgrid: VelocityGrid, potential: Potential, weight: f64) -> Result<Self> {
        crate::generator::curve::validate_weight(weight, 1)?;
        let c0 = kinetic_constant(&vgrid, potential, weight);
        let name = match potential {
            Potential::DiracBenney => "vdb",
            Potential::IncompressibleEuler => "kie",
        };
        Ok(Self::plain(name, ModelKind::Kinetic { vgrid, potential, weight }, c0, MajorantSeries::identity()))
    }

    fn plain(name: &str, kind: ModelKind, c0: f64, series: MajorantSeries) -> Self {
        Self { name: name.into(), kind, c0, series, augmented: false, taylor_cap: DEFAULT_TAYLOR_CAP }
    }

    pub fn with_augmentation(mut self, on: bool) -> Self {
        self.augmented = on;
        self
    }

    pub fn with_taylor_cap(mut self, cap: usize) -> Self {
        self.taylor_cap = cap;
        self
    }

    pub fn layout(&self) -> StateLayout {
        match self.kind {
            ModelKind::Burgers | ModelKind::LinearAdvection => StateLayout::Scalar,
            ModelKind::Euler => StateLayout::Vector2,
            ModelKind::Hydrostatic { .. } => StateLayout::Channel,
            ModelKind::Kinetic { .. } => StateLayout::Kinetic,
        }
    }

    pub fn dim(&self) -> usize {
        if self.layout() == StateLayout::Vector2 {
            2
        } else {
            1
        }
    }

    /// Components of the unaugmented state.
    pub fn base_components(&self) -> usize {
        if self.layout() == StateLayout::Vector2 {
            2
        } else {
            1
        }
    }

    pub fn transverse(&self) -> Transverse {
        match &self.kind {
            ModelKind::Hydrostatic { grid } => Transverse::ChebyshevY { nodes: grid.len() },
            ModelKind::Kinetic { vgrid, .. } => Transverse::GridV { nodes: vgrid.len(), half_width: vgrid.half_width() },
            _ => Transverse::None,
        }
    }

    /// Number of derivative blocks appended by the augmentation.
    fn derived_blocks(&self) -> usize {
        self.dim() + usize::from(!self.transverse().is_none())
    }

    pub fn state_components(&self) -> usize {
        if self.augmented {
            self.base_components() * (1 + self.derived_blocks())
        } else {
            self.base_components()
        }
    }

    fn transverse_derivative(&self, f: &SpectralField) -> Option<SpectralField> {
        match &self.kind {
            ModelKind::Hydrostatic { grid } => Some(map_transverse(f, |v| grid.differentiate(v))),
            ModelKind::Kinetic { vgrid, .. } => Some(map_transverse(f, |v| vgrid.differentiate(v))),
            _ => None,
        }
    }

    fn derivative_blocks(&self, base: &SpectralField) -> Result<Vec<SpectralField>> {
        let mut blocks = Vec::with_capacity(self.derived_blocks());
        for axis in 0..self.dim() {
            blocks.push(derivative(base, axis)?);
        }
        if let Some(t) = self.transverse_derivative(base) {
            blocks.push(t);
        }
        Ok(blocks)
    }

    /// The model's own state from an unaugmented field: `f` itself, or
    /// `[f, d f, ..]` when augmented.
    pub fn prepare_state(&self, f: &SpectralField) -> Result<SpectralField> {
        self.check_base(f)?;
        if !self.augmented {
            return Ok(f.clone());
        }
        let mut parts = vec![f.clone()];
        parts.extend(self.derivative_blocks(f)?);
        SpectralField::stack(&parts)
    }

    fn check_base(&self, f: &SpectralField) -> Result<()> {
        if f.dim() != self.dim() || f.components() != self.base_components() || f.transverse() != self.transverse() {
            return Err(Error::DimensionMismatch(format!(
                "{} expects a {} state with {} component(s), got dim {} with {} component(s) and {} transverse",
                self.name,
                self.layout().name(),
                self.base_components(),
                f.dim(),
                f.components(),
                f.transverse().kind()
            )));
        }
        Ok(())
    }

    /// The unaugmented field inside a state.
    pub fn base_state(&self, state: &SpectralField) -> SpectralField {
        if !self.augmented {
            return state.clone();
        }
        let parts: Vec<SpectralField> = (0..self.base_components()).map(|c| state.component(c)).collect();
        SpectralField::stack(&parts).expect("components share a layout")
    }

    /// `A(f)` on the unaugmented field, products kept up to box cutoff `out_trunc`.
    pub fn base_rhs(&self, f: &SpectralField, out_trunc: usize) -> Result<SpectralField> {
        match &self.kind {
            ModelKind::Burgers => burgers_rhs(f, out_trunc),
            ModelKind::LinearAdvection => linear_advection_rhs(f, out_trunc),
            ModelKind::Euler => euler_rhs(f, out_trunc),
            ModelKind::Hydrostatic { grid } => hydrostatic_rhs(f, grid, out_trunc),
            ModelKind::Kinetic { vgrid, potential, .. } => kinetic_rhs(f, vgrid, *potential, out_trunc),
        }
    }

    /// The `P_N`-projected vector field of the Galerkin system. For augmented
    /// states the derivative blocks are the derivatives of `P_N A(f)`, so the
    /// blocks stay consistent with the first one.
    pub fn rhs(&self, state: &SpectralField, n: usize) -> Result<SpectralField> {
        let base = self.base_state(state);
        let a = truncate(&self.base_rhs(&base, n)?, n);
        if !self.augmented {
            return Ok(a);
        }
        let mut parts = vec![a.clone()];
        parts.extend(self.derivative_blocks(&a)?);
        SpectralField::stack(&parts)
    }

    /// Largest deviation of the derivative blocks from the derivatives of the
    /// first block, relative to `max(1, max |state|)`. Zero when unaugmented.
    pub fn consistency_defect(&self, state: &SpectralField) -> Result<f64> {
        if !self.augmented {
            return Ok(0.0);
        }
        let b = self.base_components();
        let expected = self.derivative_blocks(&self.base_state(state))?;
        let mut worst: f64 = 0.0;
        for (k, block) in expected.iter().enumerate() {
            let parts: Vec<SpectralField> = (0..b).map(|c| state.component(b * (k + 1) + c)).collect();
            let stored = SpectralField::stack(&parts)?;
            worst = worst.max(stored.sub(block)?.max_abs());
        }
        Ok(worst / state.max_abs().max(1.0))
    }

    /// Generator variant matching the layout (Euclidean over components).
    pub fn generator_series(&self, state: &SpectralField) -> Result<GenSeries> {
        match &self.kind {
            ModelKind::Hydrostatic { grid } => mixed_series(state, grid, self.taylor_cap),
            ModelKind::Kinetic { vgrid, weight, .. } => kinetic_series(state, vgrid, *weight, self.taylor_cap),
            _ => fourier_series(state),
        }
    }

    /// Integral over the transverse grid (the value itself without one).
    pub fn transverse_integral(&self, values: &[Complex64]) -> Complex64 {
        match &self.kind {
            ModelKind::Hydrostatic { grid } => grid.integrate(values),
            ModelKind::Kinetic { vgrid, .. } => vgrid.trapezoid(values),
            _ => values[0],
        }
    }

    /// Right-hand side of condition (7) for a generator value `g` and slope `dg`.
    pub fn condition_bound(&self, g: f64, dg: f64) -> Result<f64> {
        Ok(self.c0 * self.series.eval(g)? * (1.0 + dg))
    }
}
