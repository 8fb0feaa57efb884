use crate::error::{Error, Result};
use crate::generator::{GeneratorCurve, MajorantSeries};

/// Data of the scalar Hopf-type inequality
/// `d_t G <= C0 F(G) (1 + d_z G)` on `0 <= z <= rho`, with `G(0, .) <= M0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfProblem {
    pub c0: f64,
    pub series: MajorantSeries,
    pub rho: f64,
    pub m0: f64,
}

impl HopfProblem {
    pub fn new(c0: f64, series: MajorantSeries, rho: f64, m0: f64) -> Result<Self> {
        if !(c0 > 0.0) {
            return Err(Error::InvalidConfig(format!("C0 must be positive, got {c0}")));
        }
        if !(rho > 0.0) {
            return Err(Error::InvalidConfig(format!("rho must be positive, got {rho}")));
        }
        if !(m0 >= 0.0) || !m0.is_finite() {
            return Err(Error::InvalidConfig(format!("M0 must be finite and nonnegative, got {m0}")));
        }
        Ok(Self { c0, series, rho, m0 })
    }

    /// Shrink rate `C1 = C0 F~(3 M0)` of the analyticity radius
    /// `rho(t) = rho - C1 t = theta(t) rho`.
    pub fn shrink_rate(&self) -> Result<f64> {
        Ok(self.c0 * self.series.eval(3.0 * self.m0)?)
    }

    /// `theta'(t)`, constant in time.
    pub fn theta_slope(&self) -> Result<f64> {
        Ok(-self.shrink_rate()? / self.rho)
    }

    /// Coarse bound `M0 + C0 t F~(2 M0)` valid while the bootstrap holds.
    pub fn closed_form(&self, t: f64) -> Result<f64> {
        Ok(self.m0 + self.c0 * t * self.series.eval(2.0 * self.m0)?)
    }
}

/// `M0 = sup_{0 <= z <= rho} Gen[u0](z)`. Generators are nondecreasing, so the
/// supremum is the value at `z = rho`, which must be the last grid point.
pub fn compute_m0(curve: &GeneratorCurve, rho: f64) -> Result<f64> {
    let last = curve
        .zgrid
        .last()
        .ok_or_else(|| Error::DomainMismatch("empty curve".into()))?;
    if curve.zgrid[0] != 0.0 || (last - rho).abs() > 1e-12 * rho.max(1.0) {
        return Err(Error::DomainMismatch(format!(
            "curve spans [{}, {last}], expected [0, {rho}]",
            curve.zgrid[0]
        )));
    }
    Ok(*curve.values.last().expect("nonempty"))
}

/// `theta(t) = 1 - C0 F~(3 M0) t / rho`. May be nonpositive; callers gate on it.
pub fn theta(t: f64, problem: &HopfProblem) -> Result<f64> {
    Ok(1.0 + problem.theta_slope()? * t)
}

/// Time `T = min(M0 / (C0 F~(2 M0)), rho / (C0 F~(3 M0)))` at which either the
/// bootstrap bound reaches `2 M0` or the rescaled domain collapses.
pub fn lifespan(problem: &HopfProblem) -> Result<f64> {
    if problem.m0 == 0.0 {
        return Err(Error::ZeroData);
    }
    let bootstrap = problem.m0 / (problem.c0 * problem.series.eval(2.0 * problem.m0)?);
    let collapse = problem.rho / problem.shrink_rate()?;
    Ok(bootstrap.min(collapse))
}

/// [`lifespan`] with the `+inf` sentinel for vanishing data.
pub fn lifespan_or_inf(problem: &HopfProblem) -> Result<f64> {
    match lifespan(problem) {
        Err(Error::ZeroData) => Ok(f64::INFINITY),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{gen_fourier, uniform_zgrid};
    use crate::spectral::SpectralField;
    use num_complex::Complex64;

    fn unit() -> HopfProblem {
        HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 1.0).unwrap()
    }

    #[test]
    fn m0_of_cosine() {
        let h = Complex64::new(0.5, 0.0);
        let f = SpectralField::from_entries(&[(vec![1], h), (vec![-1], h)], 1, 2).unwrap();
        let c = gen_fourier(&f, &uniform_zgrid(1.0, 65)).unwrap();
        assert!((compute_m0(&c, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-12);
        assert!(matches!(compute_m0(&c, 2.0), Err(Error::DomainMismatch(_))));
        let zero = gen_fourier(&SpectralField::scalar(1, 2).unwrap(), &uniform_zgrid(1.0, 5)).unwrap();
        assert_eq!(compute_m0(&zero, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_values() {
        let p = unit();
        assert_eq!(theta(0.0, &p).unwrap(), 1.0);
        assert!(theta(1.0 / 3.0, &p).unwrap().abs() < 1e-15);
        assert!(theta(0.2, &p).unwrap() < theta(0.1, &p).unwrap());
    }

    #[test]
    fn lifespan_unit_problem() {
        assert!((lifespan(&unit()).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lifespan_rho_scaling() {
        let mut p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 10.0).unwrap();
        let collapse = p.rho / p.shrink_rate().unwrap();
        p.rho = 2.0;
        assert!((p.rho / p.shrink_rate().unwrap() - 2.0 * collapse).abs() < 1e-15);
    }

    #[test]
    fn zero_data() {
        let p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 0.0).unwrap();
        assert_eq!(lifespan(&p), Err(Error::ZeroData));
        assert_eq!(lifespan_or_inf(&p).unwrap(), f64::INFINITY);
    }

    #[test]
    fn rejects_bad_constants() {
        assert!(HopfProblem::new(0.0, MajorantSeries::identity(), 1.0, 1.0).is_err());
        assert!(HopfProblem::new(1.0, MajorantSeries::identity(), -1.0, 1.0).is_err());
        assert!(HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, -1.0).is_err());
    }
}
