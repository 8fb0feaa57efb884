use gentrack::generator::{uniform_zgrid, MajorantSeries};
use gentrack::majorant::{integrate_hopf_envelope, lifespan, theta, HopfProblem, MajorantEnvelope, TimeStepping};
use proptest::prelude::*;

fn tgrid(end: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| end * k as f64 / n as f64).collect()
}

fn run(p: &HopfProblem, end: f64, zpoints: usize, init: impl Fn(f64) -> f64, stepping: TimeStepping) -> MajorantEnvelope {
    let zs = uniform_zgrid(p.rho, zpoints);
    let data: Vec<f64> = zs.iter().map(|&z| init(z)).collect();
    integrate_hopf_envelope(p, &tgrid(end, 8), &zs, &data, stepping).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn numeric_below_closed_form(m0 in 0.1f64..3.0, c0 in 0.2f64..3.0, rho in 0.3f64..2.0) {
        let p = HopfProblem::new(c0, MajorantSeries::identity(), rho, m0).unwrap();
        let t_end = lifespan(&p).unwrap() * 0.999;
        // Initial curve with sup M0 at z = rho, as for a generator.
        let env = run(&p, t_end, 33, |z| m0 * (z - rho).exp(), TimeStepping::default());
        for (row, cf) in env.numeric.iter().zip(&env.closed_form) {
            for v in row {
                prop_assert!(*v <= cf + 1e-8, "{v} > {cf}");
            }
        }
    }

    #[test]
    fn nested_data_stay_nested(m0 in 0.2f64..2.0, lift in 0.0f64..0.5) {
        let p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, m0 + lift).unwrap();
        let end = 0.5 * lifespan(&p).unwrap();
        let stepping = TimeStepping::Fixed(2e-3);
        let low = run(&p, end, 33, |z| m0 * (z - 1.0).exp(), stepping);
        let high = run(&p, end, 33, |z| (m0 + lift) * (z - 1.0).exp() + lift * z, stepping);
        for (a, b) in low.numeric.iter().flatten().zip(high.numeric.iter().flatten()) {
            prop_assert!(a <= b, "{a} > {b}");
        }
    }
}

#[test]
fn first_order_grid_convergence() {
    let p = HopfProblem::new(1.0, MajorantSeries::identity(), 1.0, 1.0).unwrap();
    let end = 0.2;
    let init = |z: f64| (z - 1.0).exp() + 0.3 * (3.0 * z).sin() * (z - 1.0).exp() * 0.2;
    let sample = |zpoints: usize, dt: f64| -> Vec<f64> {
        let env = run(&p, end, zpoints, init, TimeStepping::Fixed(dt));
        let step = (zpoints - 1) / 16;
        env.numeric.last().unwrap().iter().step_by(step).copied().collect()
    };
    let coarse = sample(65, 2e-3);
    let mid = sample(129, 1e-3);
    let fine = sample(257, 5e-4);
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let ratio = dist(&coarse, &mid) / dist(&mid, &fine);
    assert!((ratio - 2.0).abs() <= 0.5, "ratio {ratio}");
}

#[test]
fn domain_edge_collapses_at_shrink_time() {
    let p = HopfProblem::new(1.0, MajorantSeries::identity(), 2.0, 0.5).unwrap();
    let t_star = p.rho / p.shrink_rate().unwrap();
    let edge = |t: f64| theta(t, &p).unwrap() * p.rho;
    assert!(edge(t_star).abs() < 1e-14);
    let samples: Vec<f64> = (0..50).map(|k| edge(t_star * k as f64 / 49.0)).collect();
    assert!(samples.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn bootstrap_branch_scales_with_c0() {
    let series = MajorantSeries::new(vec![0.0, 1.0, 0.5, 0.25], f64::INFINITY);
    let base = HopfProblem::new(1.0, series.clone(), 100.0, 0.7).unwrap();
    for lambda in [0.5, 2.0, 7.0] {
        let scaled = HopfProblem::new(lambda, series.clone(), 100.0, 0.7).unwrap();
        let (a, b) = (lifespan(&base).unwrap(), lifespan(&scaled).unwrap());
        assert!((a / lambda - b).abs() < 1e-14 * a, "{a} {b}");
    }
}

#[test]
fn small_data_bootstrap_limit() {
    // For F = Id the bootstrap time M0 / (2 C0 M0) is 1 / (2 C0) for every M0 > 0.
    let c0 = 1.5;
    let p = HopfProblem::new(c0, MajorantSeries::identity(), 1e6, 1e-6).unwrap();
    let t_boot = lifespan(&p).unwrap();
    assert!((t_boot - 1.0 / (2.0 * c0)).abs() < 1e-12);
    // Constant data grow like M0 e^{C0 t}, below 2 M0 up to that time.
    let env = run(&p, t_boot, 9, |_| 1e-6, TimeStepping::Fixed(1e-4));
    let top = env.numeric.last().unwrap()[4];
    let exact = 1e-6 * (c0 * t_boot).exp();
    assert!((top - exact).abs() < 1e-9 * exact.max(1e-6), "{top} vs {exact}");
    assert!(top <= env.closed_form.last().unwrap() + 1e-15);
}
