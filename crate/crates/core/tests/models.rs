use std::f64::consts::PI;

use gentrack::generator::{fourier_series, uniform_zgrid};
use gentrack::models::{
    burgers_rhs, certify_condition, euler_rhs, galerkin_step, hydrostatic_rhs, kie_potential, perturbed_maxwellian, random_field, shear,
    simulate, sine, taylor_green, vdb_rhs, ModelSpec, Potential, RandomSpec, SimulationSettings,
};
use gentrack::spectral::{
    divergence, evaluate_physical, ChebyshevGrid, Mode, SpectralField, Transverse, VelocityGrid,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn taylor_green_nonlinearity_is_a_gradient() {
    let u = taylor_green(4).unwrap();
    assert!(euler_rhs(&u, 8).unwrap().max_abs() < 1e-12);
}

#[test]
fn euler_rhs_is_divergence_free() {
    let model = ModelSpec::euler();
    for seed in 0..5 {
        let u = random_field(&model, 6, RandomSpec { rate: 0.5, amplitude: 1.0, seed }).unwrap();
        let r = euler_rhs(&u, 12).unwrap();
        assert!(r.max_abs() > 1e-3);
        assert!(divergence(&r).unwrap().max_abs() < 1e-11);
    }
    let constant = SpectralField::zeros(2, 3, 2, Transverse::None).unwrap();
    assert_eq!(euler_rhs(&constant, 3).unwrap().max_abs(), 0.0);
}

#[test]
fn burgers_matches_pointwise_product_on_random_data() {
    let u = random_field(&ModelSpec::burgers(), 6, RandomSpec { rate: 0.4, amplitude: 1.0, seed: 9 }).unwrap();
    let r = burgers_rhs(&u, 12).unwrap();
    let pts = 64;
    let su = evaluate_physical(&u, pts).unwrap();
    let sr = evaluate_physical(&r, pts).unwrap();
    // Independent derivative: centred difference of the exact trigonometric sum.
    let value = |x: f64| -> Complex64 {
        (0..u.mode_count()).map(|i| u.slot(0, i)[0] * Complex64::from_polar(1.0, u.mode_at(i).get(0) as f64 * x)).sum()
    };
    for p in 0..pts {
        let x = su.coords(p)[0];
        let h = 1e-4;
        let du = (value(x - 2.0 * h) - value(x - h) * 8.0 + value(x + h) * 8.0 - value(x + 2.0 * h)) / (12.0 * h);
        let want = -su.value(0, p, 0) * du;
        assert!((sr.value(0, p, 0) - want).norm() < 1e-9);
    }
}

#[test]
fn shear_flow_is_steady() {
    let grid = ChebyshevGrid::new(33).unwrap();
    let w = shear(&grid, 8).unwrap();
    assert!(hydrostatic_rhs(&w, &grid, 8).unwrap().max_abs() < 1e-13);
    let zero = SpectralField::zeros(1, 4, 1, Transverse::ChebyshevY { nodes: 33 }).unwrap();
    assert_eq!(hydrostatic_rhs(&zero, &grid, 4).unwrap().max_abs(), 0.0);
}

#[test]
fn hydrostatic_single_mode_matches_closed_form() {
    // omega = cos x e^y: psi'' = e^y, psi(+-1) = 0 gives psi = e^y - y sinh 1 - cosh 1, and
    // -(u . grad omega) = (1/2) sin 2x (psi' g - psi g') with g = e^y.
    let grid = ChebyshevGrid::new(33).unwrap();
    let mut w = SpectralField::zeros(1, 2, 1, Transverse::ChebyshevY { nodes: 33 }).unwrap();
    for k in [-1, 1] {
        let vals: Vec<Complex64> = grid.nodes().iter().map(|y| c(0.5 * y.exp(), 0.0)).collect();
        w.at_mut(0, Mode::d1(k)).copy_from_slice(&vals);
    }
    let r = hydrostatic_rhs(&w, &grid, 2).unwrap();
    let (s1, c1) = (1f64.sinh(), 1f64.cosh());
    for (j, &y) in grid.nodes().iter().enumerate() {
        let h = y.exp() * (c1 - s1 + y * s1);
        // (1/2) sin 2x = (e^{2ix} - e^{-2ix}) / (4i).
        assert!((r.at(0, Mode::d1(2))[j] - c(0.0, -h / 4.0)).norm() < 1e-8);
        assert!((r.at(0, Mode::d1(-2))[j] - c(0.0, h / 4.0)).norm() < 1e-8);
        assert!(r.at(0, Mode::ZERO)[j].norm() < 1e-8);
    }
}

fn kinetic_field(vgrid: &VelocityGrid, modes: &[(i64, f64)], profile: impl Fn(f64) -> f64) -> SpectralField {
    let mut f = SpectralField::zeros(1, 2, 1, Transverse::GridV { nodes: vgrid.len(), half_width: vgrid.half_width() }).unwrap();
    for &(k, a) in modes {
        let vals: Vec<Complex64> = vgrid.points().iter().map(|&v| c(a * profile(v), 0.0)).collect();
        f.at_mut(0, Mode::d1(k)).copy_from_slice(&vals);
    }
    f
}

fn gaussian(v: f64) -> f64 {
    (-0.5 * v * v).exp() / (2.0 * PI).sqrt()
}

#[test]
fn vdb_single_mode_force() {
    let g = VelocityGrid::new(129, 8.0);
    let eps = 0.1;
    let f = kinetic_field(&g, &[(0, 1.0), (1, eps / 2.0), (-1, eps / 2.0)], gaussian);
    let r = vdb_rhs(&f, &g, 2).unwrap();
    let dg = g.differentiate(f.at(0, Mode::ZERO));
    for (j, &v) in g.points().iter().enumerate() {
        // mode +-1: -v (+-i) (eps/2) g + (+-i eps/2) g'.
        for s in [-1.0, 1.0] {
            let want = c(0.0, s) * (eps / 2.0) * (dg[j] - c(v * gaussian(v), 0.0));
            assert!((r.at(0, Mode::d1(s as i64))[j] - want).norm() < 1e-10);
        }
    }
}

#[test]
fn vdb_rhs_conserves_mass() {
    let g = VelocityGrid::new(129, 8.0);
    let model = ModelSpec::kinetic(g.clone(), Potential::DiracBenney, 4.0).unwrap();
    let f = random_field(&model, 4, RandomSpec { rate: 0.5, amplitude: 0.2, seed: 4 }).unwrap();
    let r = vdb_rhs(&f, &g, 4).unwrap();
    assert!(g.trapezoid(r.at(0, Mode::ZERO)).norm() < 1e-12);
}

#[test]
fn kie_potential_quadrature() {
    let g = VelocityGrid::new(129, 8.0);
    let f = kinetic_field(&g, &[(1, 0.5), (-1, 0.5)], gaussian);
    let phi = kie_potential(&f, &g).unwrap();
    let h = g.spacing();
    let n = g.len();
    let mut oracle = 0.0;
    for (j, &v) in g.points().iter().enumerate() {
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        oracle += w * h * 0.5 * gaussian(v) * v * v;
    }
    assert!((phi.coeff(Mode::d1(1)) - c(-oracle, 0.0)).norm() < 1e-12);
    assert!((oracle - 0.5).abs() < 1e-10);
    assert!(phi.coeff(Mode::d1(1)).im == 0.0 && phi.coeff(Mode::ZERO) == c(0.0, 0.0));
}

#[test]
fn rk4_richardson_on_burgers() {
    let model = ModelSpec::burgers();
    let u = sine(16).unwrap();
    let gap = |dt: f64| {
        let full = galerkin_step(&u, dt, &model, 16).unwrap();
        let half = galerkin_step(&galerkin_step(&u, dt / 2.0, &model, 16).unwrap(), dt / 2.0, &model, 16).unwrap();
        full.sub(&half).unwrap().max_abs()
    };
    let ratio = gap(0.04) / gap(0.02);
    assert!((ratio.log2() - 5.0).abs() < 0.3, "{}", ratio.log2());
}

#[test]
fn discrete_time_derivative_property() {
    let model = ModelSpec::burgers();
    let zs = uniform_zgrid(1.0, 33);
    let settings = SimulationSettings { n: 16, dt: 1e-3, t_end: 0.1, measure_every: 10, zgrid: zs.clone() };
    let rec = simulate(&model, &sine(16).unwrap(), &settings).unwrap();
    for k in 0..rec.times.len() - 1 {
        let h = rec.times[k + 1] - rec.times[k];
        let diff = rec.states[k + 1].sub(&rec.states[k]).unwrap().scaled(1.0 / h);
        let g_diff = fourier_series(&diff).unwrap();
        for (j, &z) in zs.iter().enumerate() {
            let lhs = (rec.curves[k + 1].values[j] - rec.curves[k].values[j]) / h;
            assert!(lhs <= g_diff.eval(z) + 1e-8);
        }
    }
}

#[test]
fn euler_invariants_on_random_data() {
    let model = ModelSpec::euler();
    let u0 = random_field(&model, 16, RandomSpec { rate: 0.6, amplitude: 0.5, seed: 21 }).unwrap();
    let settings = SimulationSettings { n: 16, dt: 1e-3, t_end: 1.0, measure_every: 100, zgrid: uniform_zgrid(0.5, 9) };
    let rec = simulate(&model, &u0, &settings).unwrap();
    let e0 = rec.diagnostics[0].energy;
    for d in &rec.diagnostics {
        assert!((d.energy - e0).abs() <= 1e-8 * e0.max(1.0), "energy drift {}", d.energy - e0);
        assert!(d.divergence <= 1e-9);
    }
}

#[test]
fn vdb_run_conserves_mass_and_symmetry() {
    let g = VelocityGrid::new(129, 8.0);
    let model = ModelSpec::kinetic(g.clone(), Potential::DiracBenney, 4.0).unwrap();
    let f0 = perturbed_maxwellian(&g, 8, 0.01).unwrap();
    let settings = SimulationSettings { n: 8, dt: 1e-2, t_end: 0.5, measure_every: 10, zgrid: uniform_zgrid(0.5, 9) };
    let rec = simulate(&model, &f0, &settings).unwrap();
    let m0 = rec.diagnostics[0].mass;
    for (d, s) in rec.diagnostics.iter().zip(&rec.states) {
        assert!((d.mass - m0).abs() <= 1e-8);
        assert!(s.hermitian_defect() < 1e-12);
    }
}

#[test]
fn augmented_hydrostatic_run_stays_consistent() {
    let grid = ChebyshevGrid::new(33).unwrap();
    let model = ModelSpec::hydrostatic(grid).unwrap().with_augmentation(true).with_taylor_cap(6);
    let w0 = random_field(&model, 8, RandomSpec { rate: 0.8, amplitude: 0.3, seed: 2 }).unwrap();
    let settings = SimulationSettings { n: 8, dt: 1e-2, t_end: 0.1, measure_every: 2, zgrid: uniform_zgrid(0.5, 9) };
    let rec = simulate(&model, &w0, &settings).unwrap();
    assert_eq!(rec.states[0].components(), 3);
    assert!(rec.diagnostics.iter().all(|d| d.consistency <= 1e-8));
}

#[test]
fn condition_holds_on_random_fields() {
    let zs = uniform_zgrid(1.0, 17);
    for model in [ModelSpec::burgers(), ModelSpec::euler()] {
        let rep = certify_condition(&model, 100, 8, &zs, 17).unwrap();
        assert!(rep.passed(), "{}: {:?}", model.name, rep.max_ratio);
        assert_eq!(rep.ratios.len(), 100);
    }
}
