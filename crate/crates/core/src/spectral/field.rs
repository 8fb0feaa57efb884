use num_complex::Complex64;

use crate::error::{Error, Result};

/// Multi-index of a Fourier mode. One-dimensional fields leave the second
/// entry at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode(pub [i64; 2]);

impl Mode {
    pub const ZERO: Mode = Mode([0, 0]);

    pub fn d1(k: i64) -> Self {
        Mode([k, 0])
    }

    pub fn d2(k1: i64, k2: i64) -> Self {
        Mode([k1, k2])
    }

    pub fn get(&self, axis: usize) -> i64 {
        self.0[axis]
    }

    /// Euclidean length. This is the norm used by both the truncation ball
    /// and the generator weight `e^{z|alpha|}`.
    pub fn norm(&self) -> f64 {
        let [a, b] = self.0;
        ((a * a + b * b) as f64).sqrt()
    }

    pub fn norm_sq(&self) -> i64 {
        let [a, b] = self.0;
        a * a + b * b
    }

    pub fn sup_norm(&self) -> u64 {
        self.0[0].unsigned_abs().max(self.0[1].unsigned_abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0]
    }
}

impl std::ops::Neg for Mode {
    type Output = Mode;
    fn neg(self) -> Mode {
        Mode([-self.0[0], -self.0[1]])
    }
}

impl std::ops::Add for Mode {
    type Output = Mode;
    fn add(self, o: Mode) -> Mode {
        Mode([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl std::ops::Sub for Mode {
    type Output = Mode;
    fn sub(self, o: Mode) -> Mode {
        Mode([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

/// Discretisation attached to every Fourier mode in a direction transverse to
/// the periodic variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transverse {
    None,
    /// Chebyshev-Gauss-Lobatto nodes on `y in [-1, 1]`, ordered from `y = 1`
    /// down to `y = -1`.
    ChebyshevY { nodes: usize },
    /// Uniform velocity grid on `[-half_width, half_width]`, both ends included.
    GridV { nodes: usize, half_width: f64 },
}

impl Transverse {
    pub fn nodes(&self) -> usize {
        match *self {
            Transverse::None => 1,
            Transverse::ChebyshevY { nodes } | Transverse::GridV { nodes, .. } => nodes,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Transverse::None => "none",
            Transverse::ChebyshevY { .. } => "chebyshev_y",
            Transverse::GridV { .. } => "grid_v",
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Transverse::None)
    }
}

/// Truncated Fourier coefficient table on the torus `T^d`, `d in {1, 2}`.
///
/// Coefficients are stored densely for every mode in the box `|alpha|_inf <= N`,
/// with layout `[component][mode][transverse node]`. Modes outside the box are
/// implicitly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    dim: usize,
    trunc: usize,
    components: usize,
    transverse: Transverse,
    data: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(dim: usize, trunc: usize, components: usize, transverse: Transverse) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::DimensionMismatch(format!("dim must be 1 or 2, got {dim}")));
        }
        if components == 0 {
            return Err(Error::DimensionMismatch("a field needs at least one component".into()));
        }
        if transverse.nodes() == 0 {
            return Err(Error::DimensionMismatch("transverse grid without nodes".into()));
        }
        let side = 2 * trunc + 1;
        let len = components * side.pow(dim as u32) * transverse.nodes();
        Ok(Self {
            dim,
            trunc,
            components,
            transverse,
            data: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    /// Scalar field without transverse structure.
    pub fn scalar(dim: usize, trunc: usize) -> Result<Self> {
        Self::zeros(dim, trunc, 1, Transverse::None)
    }

    /// Builds a scalar field from `(multi-index, amplitude)` pairs. Repeated
    /// indices accumulate.
    pub fn from_entries(entries: &[(Vec<i64>, Complex64)], dim: usize, trunc: usize) -> Result<Self> {
        let mut f = Self::scalar(dim, trunc)?;
        for (idx, value) in entries {
            if idx.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "index {idx:?} has {} entries, field has dim {dim}",
                    idx.len()
                )));
            }
            let mode = if dim == 1 { Mode::d1(idx[0]) } else { Mode::d2(idx[0], idx[1]) };
            if mode.sup_norm() > trunc as u64 {
                return Err(Error::IndexOutOfTruncation { mode: idx.clone(), trunc });
            }
            f.at_mut(0, mode)[0] += value;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn transverse(&self) -> Transverse {
        self.transverse
    }

    pub fn nodes(&self) -> usize {
        self.transverse.nodes()
    }

    pub fn side(&self) -> usize {
        2 * self.trunc + 1
    }

    pub fn mode_count(&self) -> usize {
        self.side().pow(self.dim as u32)
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn same_layout(&self, other: &SpectralField) -> bool {
        self.dim == other.dim
            && self.trunc == other.trunc
            && self.components == other.components
            && self.transverse == other.transverse
    }

    /// Mode at storage position `i`.
    pub fn mode_at(&self, i: usize) -> Mode {
        let n = self.trunc as i64;
        if self.dim == 1 {
            Mode::d1(i as i64 - n)
        } else {
            let side = self.side();
            Mode::d2((i / side) as i64 - n, (i % side) as i64 - n)
        }
    }

    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        (0..self.mode_count()).map(move |i| self.mode_at(i))
    }

    pub fn contains(&self, mode: Mode) -> bool {
        mode.sup_norm() <= self.trunc as u64 && (self.dim == 2 || mode.0[1] == 0)
    }

    pub fn mode_index(&self, mode: Mode) -> Option<usize> {
        if !self.contains(mode) {
            return None;
        }
        let n = self.trunc as i64;
        let i = if self.dim == 1 {
            (mode.0[0] + n) as usize
        } else {
            ((mode.0[0] + n) as usize) * self.side() + (mode.0[1] + n) as usize
        };
        Some(i)
    }

    fn offset(&self, component: usize, index: usize) -> usize {
        (component * self.mode_count() + index) * self.nodes()
    }

    /// Transverse node values of one component at storage position `index`.
    pub fn slot(&self, component: usize, index: usize) -> &[Complex64] {
        let o = self.offset(component, index);
        &self.data[o..o + self.nodes()]
    }

    pub fn slot_mut(&mut self, component: usize, index: usize) -> &mut [Complex64] {
        let o = self.offset(component, index);
        let nodes = self.nodes();
        &mut self.data[o..o + nodes]
    }

    /// Panics if the mode is outside the stored box.
    pub fn at(&self, component: usize, mode: Mode) -> &[Complex64] {
        let i = self.mode_index(mode).expect("mode outside stored box");
        self.slot(component, i)
    }

    pub fn at_mut(&mut self, component: usize, mode: Mode) -> &mut [Complex64] {
        let i = self.mode_index(mode).expect("mode outside stored box");
        self.slot_mut(component, i)
    }

    /// Coefficient of component 0, node 0; zero outside the stored box.
    pub fn coeff(&self, mode: Mode) -> Complex64 {
        self.mode_index(mode)
            .map(|i| self.slot(0, i)[0])
            .unwrap_or_default()
    }

    pub fn set_coeff(&mut self, mode: Mode, value: Complex64) {
        self.at_mut(0, mode)[0] = value;
    }

    /// Extracts one component as a scalar field with the same transverse layout.
    pub fn component(&self, c: usize) -> SpectralField {
        let len = self.mode_count() * self.nodes();
        let o = c * len;
        SpectralField {
            dim: self.dim,
            trunc: self.trunc,
            components: 1,
            transverse: self.transverse,
            data: self.data[o..o + len].to_vec(),
        }
    }

    /// Stacks fields of identical layout into one multi-component field.
    pub fn stack(parts: &[SpectralField]) -> Result<SpectralField> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("nothing to stack".into()))?;
        let mut data = Vec::with_capacity(first.data.len() * parts.len());
        let mut components = 0;
        for p in parts {
            if p.dim != first.dim || p.trunc != first.trunc || p.transverse != first.transverse {
                return Err(Error::DimensionMismatch("stacked fields differ in layout".into()));
            }
            components += p.components;
            data.extend_from_slice(&p.data);
        }
        Ok(SpectralField {
            dim: first.dim,
            trunc: first.trunc,
            components,
            transverse: first.transverse,
            data,
        })
    }

    /// Copy into a box of a different cutoff, dropping modes that do not fit.
    pub fn resized(&self, trunc: usize) -> SpectralField {
        let mut out = SpectralField {
            dim: self.dim,
            trunc,
            components: self.components,
            transverse: self.transverse,
            data: vec![Complex64::default(); self.components * (2 * trunc + 1).pow(self.dim as u32) * self.nodes()],
        };
        for i in 0..self.mode_count() {
            let mode = self.mode_at(i);
            if let Some(j) = out.mode_index(mode) {
                for c in 0..self.components {
                    let src = self.slot(c, i).to_vec();
                    out.slot_mut(c, j).copy_from_slice(&src);
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> SpectralField {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// `self + s * other`; both fields must share a layout.
    pub fn axpy(&self, s: f64, other: &SpectralField) -> Result<SpectralField> {
        if !self.same_layout(other) {
            return Err(Error::DimensionMismatch("axpy on fields of different layout".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
        Ok(out)
    }

    pub fn add(&self, other: &SpectralField) -> Result<SpectralField> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        self.axpy(-1.0, other)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Sup over transverse nodes of the Euclidean norm across components.
    /// This is the per-mode magnitude every generator variant builds on.
    pub fn mode_weight(&self, index: usize) -> f64 {
        (0..self.nodes())
            .map(|node| {
                (0..self.components)
                    .map(|c| self.slot(c, index)[node].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `c_{-alpha} = conj(c_alpha)` relative to the
    /// largest coefficient. Zero for real-valued fields.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.mode_count() {
            let j = self.mode_index(-self.mode_at(i)).expect("box is symmetric");
            for c in 0..self.components {
                for (a, b) in self.slot(c, i).iter().zip(self.slot(c, j)) {
                    worst = worst.max((a - b.conj()).norm());
                }
            }
        }
        worst / scale
    }

    /// Replaces every pair by its Hermitian average, removing rounding drift.
    pub fn symmetrize(&mut self) {
        for i in 0..self.mode_count() {
            let j = self.mode_index(-self.mode_at(i)).expect("box is symmetric");
            if j < i {
                continue;
            }
            for c in 0..self.components {
                for node in 0..self.nodes() {
                    let a = self.slot(c, i)[node];
                    let b = self.slot(c, j)[node];
                    let avg = (a + b.conj()) * 0.5;
                    self.slot_mut(c, i)[node] = avg;
                    self.slot_mut(c, j)[node] = avg.conj();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_field() {
        let f = SpectralField::from_entries(&[(vec![0], c(3.0, 0.0))], 1, 4).unwrap();
        assert_eq!(f.coeff(Mode::ZERO), c(3.0, 0.0));
        assert_eq!(f.modes().filter(|&m| f.coeff(m) != c(0.0, 0.0)).count(), 1);
    }

    #[test]
    fn cosine_is_hermitian() {
        let f = SpectralField::from_entries(&[(vec![1], c(0.5, 0.0)), (vec![-1], c(0.5, 0.0))], 1, 4).unwrap();
        assert_eq!(f.hermitian_defect(), 0.0);
        assert_eq!(f.coeff(Mode::d1(2)), c(0.0, 0.0));
    }

    #[test]
    fn out_of_truncation_rejected() {
        let err = SpectralField::from_entries(&[(vec![5], c(1.0, 0.0))], 1, 4).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfTruncation { trunc: 4, .. }));
    }

    #[test]
    fn malformed_index_rejected() {
        let err = SpectralField::from_entries(&[(vec![1, 2], c(1.0, 0.0))], 1, 4).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
        assert!(SpectralField::scalar(3, 4).is_err());
    }

    #[test]
    fn mode_index_roundtrip_2d() {
        let f = SpectralField::scalar(2, 3).unwrap();
        for i in 0..f.mode_count() {
            assert_eq!(f.mode_index(f.mode_at(i)), Some(i));
        }
        assert_eq!(f.mode_index(Mode::d2(4, 0)), None);
    }

    #[test]
    fn resize_keeps_common_modes() {
        let f = SpectralField::from_entries(&[(vec![1], c(1.0, 2.0)), (vec![3], c(4.0, 0.0))], 1, 3).unwrap();
        let g = f.resized(2);
        assert_eq!(g.coeff(Mode::d1(1)), c(1.0, 2.0));
        assert_eq!(g.coeff(Mode::d1(3)), c(0.0, 0.0));
        let h = g.resized(6);
        assert_eq!(h.coeff(Mode::d1(1)), c(1.0, 2.0));
        assert_eq!(h.trunc(), 6);
    }
}
