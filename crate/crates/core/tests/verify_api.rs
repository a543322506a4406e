use std::f64::consts::PI;

use randflight::analytic::{
    char_fun, conditional_law, surface_mass, unconditional_at_gap, Ctx, Law, UncCtx,
};
use randflight::flight::{Deviations, FlightModel, FlightSpec};
use randflight::montecarlo::simulate_endpoints;
use randflight::verify::{
    ball_quadrature, empirical_cf, empirical_cf_tolerance, pde_check, run_criterion, Axis,
    GridSpec, SuiteConfig, SuiteScale, VerificationReport,
};
use randflight::Error;

#[test]
fn ball_quadrature_examples() {
    let vol = 4.0 / 3.0 * PI * 8.0;
    assert!((ball_quadrature(|_, _| 1.0 / vol, 3, 2.0, 1e-12).unwrap() - 1.0).abs() < 1e-12);

    let dens = conditional_law(Law::X, &Ctx::new(2, 1, 1.0, 1.0).unwrap()).unwrap();
    assert!(dens.exponent() == -0.5);
    assert!((ball_quadrature(|_, w| dens.at_gap(w), 2, 1.0, 1e-10).unwrap() - 1.0).abs() < 1e-8);

    let u = UncCtx::new(3, 1.0, 1.0, 1.0).unwrap();
    let interior = ball_quadrature(|_, w| unconditional_at_gap(Law::X, &u, w).unwrap(), 3, 1.0, 1e-10).unwrap();
    let p0 = surface_mass(Law::X, 3, 1.0, 1.0).unwrap();
    assert!((interior - (1.0 - p0)).abs() < 1e-8);
}

#[test]
fn halving_tolerance_keeps_normalization() {
    for d in 2..=6 {
        for n in 1..=4 {
            let dens = conditional_law(Law::X, &Ctx::new(d, n, 1.0, 1.0).unwrap()).unwrap();
            for tol in [1e-9, 5e-10] {
                let v = ball_quadrature(|_, w| dens.at_gap(w), d, 1.0, tol).unwrap();
                assert!((v - 1.0).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn empirical_cf_examples() {
    let samples = 1_000_000;
    for (model, law, d, n, alpha) in [
        (FlightModel::StepLawA, Law::X, 2, 1, 2.0),
        (FlightModel::StepLawB, Law::Y, 4, 2, 5.0),
    ] {
        let spec = FlightSpec::new(model, d, 1.0, 1.0, Deviations::Fixed(n)).unwrap();
        let batch = simulate_endpoints(&spec, samples, 21, 8).unwrap();
        let e = empirical_cf(&batch.coords, d, 0, &[0.0, alpha]).unwrap();
        assert_eq!(e[0], 1.0);
        let want = char_fun(law, &Ctx::new(d, n, 1.0, 1.0).unwrap(), alpha).unwrap();
        assert!((e[1] - want).abs() < empirical_cf_tolerance(samples), "{} vs {want}", e[1]);
    }
}

fn grid(d: usize, t: (f64, f64), x: f64) -> GridSpec {
    let mut axes = vec![Axis { lower: t.0, upper: t.1, points: 9 }];
    axes.extend((0..d).map(|_| Axis { lower: -x, upper: x, points: 9 }));
    GridSpec::new(axes).unwrap()
}

#[test]
fn pde_check_orders() {
    let wave = pde_check(-1.0, 3, 1.0, &grid(3, (1.5, 2.0), 0.2), 3).unwrap();
    assert!(wave.passed && wave.min_order().unwrap() >= 1.8);
    let quartic = pde_check(2.0, 3, 1.0, &grid(3, (1.5, 2.0), 0.2), 3).unwrap();
    assert!(quartic.passed);
    assert!(quartic.levels.windows(2).all(|w| w[1].residual < w[0].residual));
}

#[test]
fn pde_check_rejects_grid_touching_cone() {
    let err = pde_check(1.0, 2, 1.0, &grid(2, (0.3, 0.6), 0.5), 2).unwrap_err();
    assert!(matches!(err, Error::Grid(_)));
}

#[test]
fn suite_records_are_reproducible() {
    let cfg = SuiteConfig { seed: 3, shards: 2, scale: SuiteScale::Quick };
    let strip = |mut v: Vec<randflight::verify::CheckRecord>| {
        v.iter_mut().for_each(|r| r.wall_time_s = 0.0);
        v
    };
    let a = strip(run_criterion(7, &cfg).unwrap());
    let b = strip(run_criterion(7, &cfg).unwrap());
    assert_eq!(a, b);
    assert_eq!(a[0].inputs.samples, Some(10_000));
    let report = VerificationReport { checks: a };
    let parsed = VerificationReport::from_json_lines(&report.to_json_lines()).unwrap();
    assert_eq!(parsed, report);
}
