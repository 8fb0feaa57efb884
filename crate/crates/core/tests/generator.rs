use std::f64::consts::PI;

use gentrack::generator::{
    check_calculus, check_composition, gen_compose_majorant, gen_fourier, gen_kinetic, gen_mixed, radius_estimate,
    uniform_zgrid, MajorantSeries, Variant, DEFAULT_FLOOR,
};
use gentrack::spectral::{truncate, ChebyshevGrid, Mode, SpectralField, Transverse, VelocityGrid};
use gentrack::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn field_from(dim: usize, n: usize, vals: &[(f64, f64)]) -> SpectralField {
    let mut f = SpectralField::scalar(dim, n).unwrap();
    for (slot, &(re, im)) in f.data_mut().iter_mut().zip(vals.iter().cycle()) {
        *slot = c(re, im);
    }
    f
}

/// Independent direct sum over the stored table, Euclidean weight.
fn direct_gen(f: &SpectralField, z: f64) -> f64 {
    let side = 2 * f.trunc() as i64 + 1;
    let n = f.trunc() as i64;
    f.data()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let (a, b) = if f.dim() == 1 { (i as i64 - n, 0) } else { (i as i64 / side - n, i as i64 % side - n) };
            (z * ((a * a + b * b) as f64).sqrt()).exp() * v.norm()
        })
        .sum()
}

fn coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..50)
}

#[test]
fn fourier_examples() {
    let zs = uniform_zgrid(1.0, 11);
    let three = SpectralField::from_entries(&[(vec![0], c(3.0, 0.0))], 1, 2).unwrap();
    assert!(gen_fourier(&three, &zs).unwrap().values.iter().all(|v| *v == 3.0));
    let cos = SpectralField::from_entries(&[(vec![1], c(0.5, 0.0)), (vec![-1], c(0.5, 0.0))], 1, 2).unwrap();
    let curve = gen_fourier(&cos, &zs).unwrap();
    for (z, v) in zs.iter().zip(&curve.values) {
        assert!((v - z.exp()).abs() < 1e-15 * z.exp());
    }
    assert!(matches!(gen_fourier(&cos, &[-0.1, 0.0]), Err(Error::NegativeZ(_))));
}

#[test]
fn mixed_examples() {
    let grid = ChebyshevGrid::new(33).unwrap();
    let zs = uniform_zgrid(1.0, 11);
    let mut w = SpectralField::zeros(1, 2, 1, Transverse::ChebyshevY { nodes: 33 }).unwrap();
    for k in [-1, 1] {
        let vals: Vec<Complex64> = grid.nodes().iter().map(|&y| c(0.5 * y, 0.0)).collect();
        w.at_mut(0, Mode::d1(k)).copy_from_slice(&vals);
    }
    let curve = gen_mixed(&w, &grid, &zs, 4).unwrap();
    assert_eq!(curve.variant, Variant::Mixed);
    for (z, v) in zs.iter().zip(&curve.values) {
        assert!((v - z.exp() * (1.0 + z)).abs() < 1e-10);
    }
    // y-independent data reduce to the plain generator.
    let mut flat = SpectralField::zeros(1, 2, 1, Transverse::ChebyshevY { nodes: 33 }).unwrap();
    flat.at_mut(0, Mode::d1(2)).fill(c(0.0, 0.7));
    flat.at_mut(0, Mode::d1(-2)).fill(c(0.0, -0.7));
    let plain = SpectralField::from_entries(&[(vec![2], c(0.0, 0.7)), (vec![-2], c(0.0, -0.7))], 1, 2).unwrap();
    let (a, b) = (gen_mixed(&flat, &grid, &zs, 0).unwrap(), gen_fourier(&plain, &zs).unwrap());
    assert_eq!(a.values, b.values);
    let zero = SpectralField::zeros(1, 2, 1, Transverse::ChebyshevY { nodes: 33 }).unwrap();
    assert!(gen_mixed(&zero, &grid, &zs, 4).unwrap().values.iter().all(|v| *v == 0.0));
}

fn hermite(beta: usize, v: f64) -> f64 {
    let (mut a, mut b) = (1.0, v);
    if beta == 0 {
        return a;
    }
    for k in 1..beta {
        let next = v * b - k as f64 * a;
        a = b;
        b = next;
    }
    b
}

#[test]
fn kinetic_gaussian_matches_analytic_derivatives() {
    let g = VelocityGrid::new(129, 8.0);
    let gauss = |v: f64| (-0.5 * v * v).exp() / (2.0 * PI).sqrt();
    let mut f = SpectralField::zeros(1, 1, 1, Transverse::GridV { nodes: 129, half_width: 8.0 }).unwrap();
    let vals: Vec<Complex64> = g.points().iter().map(|&v| c(gauss(v), 0.0)).collect();
    f.at_mut(0, Mode::ZERO).copy_from_slice(&vals);
    let (m, cap) = (4.0, 3);
    let zs = uniform_zgrid(0.5, 6);
    let curve = gen_kinetic(&f, &g, m, cap, &zs).unwrap();
    let sup = |beta: usize| {
        g.points()
            .iter()
            .map(|&v| (1.0 + v * v).powf(m / 2.0) * (hermite(beta, v) * gauss(v)).abs())
            .fold(0.0, f64::max)
    };
    let mut fact = 1.0;
    let sups: Vec<f64> = (0..=cap).map(sup).collect();
    for (z, v) in zs.iter().zip(&curve.values) {
        let mut want = 0.0;
        for (beta, s) in sups.iter().enumerate() {
            if beta > 0 {
                fact *= beta as f64;
            }
            want += s * z.powi(beta as i32) / fact;
        }
        fact = 1.0;
        assert!((v - want).abs() < 1e-3 * want, "{v} vs {want}");
    }
    let doubled = gen_kinetic(&f.scaled(2.0), &g, m, cap, &zs).unwrap();
    for (a, b) in doubled.values.iter().zip(&curve.values) {
        assert!((a - 2.0 * b).abs() <= 1e-15 * a);
    }
    let zero = SpectralField::zeros(1, 1, 1, Transverse::GridV { nodes: 129, half_width: 8.0 }).unwrap();
    assert!(gen_kinetic(&zero, &g, m, cap, &zs).unwrap().values.iter().all(|v| *v == 0.0));
    assert!(matches!(gen_kinetic(&f, &g, 3.0, cap, &zs), Err(Error::WeightTooSmall { .. })));
}

#[test]
fn composition_examples() {
    assert_eq!(gen_compose_majorant(&MajorantSeries::identity(), 0.7).unwrap(), 0.7);
    assert!((gen_compose_majorant(&MajorantSeries::exponential(), 1.0).unwrap() - std::f64::consts::E).abs() < 1e-12);
    let cos = SpectralField::from_entries(&[(vec![1], c(0.5, 0.0)), (vec![-1], c(0.5, 0.0))], 1, 1).unwrap();
    let zs = uniform_zgrid(1.0, 9);
    let slack = check_composition(&cos, &[0.0, 0.0, 1.0], &zs).unwrap();
    for (z, s) in zs.iter().zip(&slack) {
        let (lhs, rhs) = (0.5 + 0.5 * (2.0 * z).exp(), (2.0 * z).exp());
        assert!((s - (rhs - lhs) / (1.0 + rhs)).abs() < 1e-14);
    }
}

#[test]
fn radius_examples() {
    let entries: Vec<(Vec<i64>, Complex64)> = (-20..=20).map(|k| (vec![k], c((-0.5 * (k as f64).abs()).exp(), 0.0))).collect();
    let f = SpectralField::from_entries(&entries, 1, 20).unwrap();
    assert!((radius_estimate(&f, DEFAULT_FLOOR).unwrap() - 0.5).abs() < 1e-10);
    let entries: Vec<(Vec<i64>, Complex64)> = (-20..=20).map(|k| (vec![k], c(3.0 * (-1.2 * (k as f64).abs()).exp(), 0.0))).collect();
    let f = SpectralField::from_entries(&entries, 1, 20).unwrap();
    assert!((radius_estimate(&f, DEFAULT_FLOOR).unwrap() - 1.2).abs() < 1e-10);
    let tiny = SpectralField::from_entries(&[(vec![1], c(1.0, 0.0))], 1, 3).unwrap();
    assert!(matches!(radius_estimate(&tiny, DEFAULT_FLOOR), Err(Error::TooFewModes { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fourier_matches_direct_sum(a in coeffs(), dim in 1usize..3) {
        let f = field_from(dim, 4, &a);
        let v = gen_fourier(&f, &[0.3]).unwrap().values[0];
        let want = direct_gen(&f, 0.3);
        prop_assert!((v - want).abs() <= 1e-14 * want.max(1e-300));
    }

    #[test]
    fn curves_are_monotone_and_convex(a in coeffs()) {
        let curve = gen_fourier(&field_from(2, 3, &a), &uniform_zgrid(1.0, 33)).unwrap();
        let v = &curve.values;
        for k in 1..v.len() {
            prop_assert!(v[k] >= v[k - 1]);
        }
        for k in 1..v.len() - 1 {
            prop_assert!(v[k + 1] - 2.0 * v[k] + v[k - 1] >= -1e-12 * v[k].max(1.0));
        }
    }

    #[test]
    fn truncation_does_not_raise_the_generator(a in coeffs(), n in 0usize..5) {
        let f = field_from(2, 4, &a);
        let zs = uniform_zgrid(1.0, 17);
        let full = gen_fourier(&f, &zs).unwrap();
        let cut = gen_fourier(&truncate(&f, n), &zs).unwrap();
        for (x, y) in cut.values.iter().zip(&full.values) {
            prop_assert!(x - y <= 1e-14 * y.max(1.0));
        }
    }

    #[test]
    fn lemma_relations_hold(a in coeffs(), b in coeffs(), dim in 1usize..3) {
        let report = check_calculus(&field_from(dim, 3, &a), &field_from(dim, 4, &b), &uniform_zgrid(1.0, 17)).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn nonnegative_coefficients_saturate_the_sum(a in prop::collection::vec(0.0..1.0f64, 5), b in prop::collection::vec(0.0..1.0f64, 5)) {
        let f = field_from(1, 2, &a.iter().map(|x| (*x, 0.0)).collect::<Vec<_>>());
        let g = field_from(1, 2, &b.iter().map(|x| (*x, 0.0)).collect::<Vec<_>>());
        let report = check_calculus(&f, &g, &uniform_zgrid(1.0, 9)).unwrap();
        prop_assert!(report.sum_slack.iter().all(|s| s.abs() < 1e-14));
    }
}
