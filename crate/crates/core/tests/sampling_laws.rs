use std::f64::consts::PI;

use rand::Rng;
use randflight::quad::integrate;
use randflight::sampling::{
    fractional_poisson_mean, intertimes_from_arrivals, orientation_angle_density,
    sample_even_poisson_switches, sample_fractional_poisson, sample_intertimes, sample_orientation,
    CountingProcess, PmfTable, PoissonCondition, RngStream, StepLaw,
};
use randflight::verify::{chi_square_gof, ks_one_sample, ks_two_sample};

const N: usize = 100_000;

fn rng(stream: u64) -> RngStream {
    RngStream::new(20240611, stream)
}

#[test]
fn orientation_components_are_centered() {
    let mut r = rng(1);
    let mut sums = [0.0; 3];
    for _ in 0..N {
        let o = sample_orientation(3, &mut r).unwrap();
        assert!((o.direction().iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        for (s, x) in sums.iter_mut().zip(o.direction()) {
            *s += x;
        }
    }
    let sigma = 1.0 / (3.0 * N as f64).sqrt();
    for s in sums {
        assert!((s / N as f64).abs() < 4.0 * sigma, "{s}");
    }
}

#[test]
fn first_direction_cosine_is_uniform() {
    let mut r = rng(2);
    let xs: Vec<f64> = (0..N).map(|_| sample_orientation(3, &mut r).unwrap().direction()[0]).collect();
    let ks = ks_one_sample(&xs, |x| ((x + 1.0) / 2.0).clamp(0.0, 1.0), 0.001).unwrap();
    assert!(ks.passed, "{ks:?}");
}

#[test]
fn planar_direction_has_unit_norm() {
    let mut r = rng(3);
    for _ in 0..1000 {
        let o = sample_orientation(2, &mut r).unwrap();
        assert!((o.direction()[0].hypot(o.direction()[1]) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn joint_angles_follow_angle_density() {
    // 12 x 12 cells in (theta, phi); cell masses from the analytic integral
    // of sin(theta)/(4 pi), checked against quadrature of the density
    let bins = 12;
    let mut counts = vec![0u64; bins * bins];
    let mut r = rng(4);
    for _ in 0..N {
        let a = sample_orientation(3, &mut r).unwrap().angles();
        let i = ((a[0] / PI * bins as f64) as usize).min(bins - 1);
        let j = ((a[1] / (2.0 * PI) * bins as f64) as usize).min(bins - 1);
        counts[i * bins + j] += 1;
    }
    let mut probs = Vec::with_capacity(bins * bins);
    for i in 0..bins {
        let (a, b) = (PI * i as f64 / bins as f64, PI * (i + 1) as f64 / bins as f64);
        let cell = (a.cos() - b.cos()) / 2.0 / bins as f64;
        let dphi = 2.0 * PI / bins as f64;
        let q = integrate(|th| orientation_angle_density(3, &[th, 0.1]).unwrap(), a, b, 1e-13).unwrap() * dphi;
        assert!((q - cell).abs() < 1e-14);
        probs.extend(std::iter::repeat_n(cell, bins));
    }
    let chi = chi_square_gof(&counts, &probs, 0.001).unwrap();
    assert_eq!(chi.degrees_of_freedom, bins * bins - 1);
    assert!(chi.passed, "{chi:?}");
}

#[test]
fn planar_step_law_a_is_flat() {
    let mut r = rng(5);
    let t = 2.0;
    let xs: Vec<f64> = (0..N)
        .map(|_| sample_intertimes(StepLaw::A, 2, 1, t, &mut r).unwrap().durations()[0] / t)
        .collect();
    assert!(ks_one_sample(&xs, |x| x.clamp(0.0, 1.0), 0.001).unwrap().passed);
}

#[test]
fn first_interval_is_beta_two_two() {
    let mut r = rng(6);
    let xs: Vec<f64> = (0..N)
        .map(|_| sample_intertimes(StepLaw::A, 3, 1, 1.0, &mut r).unwrap().durations()[0])
        .collect();
    let ks = ks_one_sample(&xs, |x| x * x * (3.0 - 2.0 * x), 0.001).unwrap();
    assert!(ks.passed, "{ks:?}");
}

#[test]
fn durations_sum_to_horizon() {
    let mut r = rng(7);
    for (law, d) in [(StepLaw::A, 2), (StepLaw::A, 5), (StepLaw::B, 3), (StepLaw::B, 6)] {
        for n in 1..6 {
            let t = 0.37 * n as f64;
            let iv = sample_intertimes(law, d, n, t, &mut r).unwrap();
            assert_eq!(iv.durations().len(), n + 1);
            assert!(iv.durations().iter().all(|&x| x > 0.0));
            assert!((iv.durations().iter().sum::<f64>() - t).abs() <= 1e-12 * t);
        }
    }
}

#[test]
fn arrival_gaps_reproduce_step_law_a() {
    let (mut r1, mut r2) = (rng(8), rng(9));
    let a: Vec<f64> = (0..N)
        .map(|_| intertimes_from_arrivals(3, 2, 1.0, &mut r1).unwrap().durations()[0])
        .collect();
    let b: Vec<f64> = (0..N)
        .map(|_| sample_intertimes(StepLaw::A, 3, 2, 1.0, &mut r2).unwrap().durations()[0])
        .collect();
    let ks = ks_two_sample(&a, &b, 0.001).unwrap();
    assert!(ks.passed, "{ks:?}");
}

#[test]
fn second_arrival_given_three_events() {
    // density 6 s (t - s) / t^3
    let (lambda, t) = (1.3, 2.0);
    let mut r = rng(10);
    let xs: Vec<f64> = (0..N)
        .map(|_| {
            let sw = sample_even_poisson_switches(lambda, t, PoissonCondition::Events(3), &mut r).unwrap();
            assert_eq!(sw.switch_times.len(), 1);
            sw.switch_times[0]
        })
        .collect();
    let ks = ks_one_sample(&xs, |s| { let u = s / t; u * u * (3.0 - 2.0 * u) }, 0.001).unwrap();
    assert!(ks.passed, "{ks:?}");
}

#[test]
fn single_event_has_no_switch() {
    let mut r = rng(11);
    let sw = sample_even_poisson_switches(1.0, 1.0, PoissonCondition::Events(1), &mut r).unwrap();
    assert!(sw.switch_times.is_empty());
    assert_eq!(sw.durations(1.0), vec![1.0]);
    for _ in 0..100 {
        let sw = sample_even_poisson_switches(2.0, 1.5, PoissonCondition::RandomOdd, &mut r).unwrap();
        assert_eq!(sw.events % 2, 1);
        assert_eq!(sw.switch_times.len(), sw.events / 2);
        assert!((sw.durations(1.5).iter().sum::<f64>() - 1.5).abs() < 1e-12);
    }
}

#[test]
fn fractional_poisson_sample_mean() {
    let (lambda, t) = (2.0, 1.0);
    let table = PmfTable::build(CountingProcess::N, 3, lambda, t).unwrap();
    let mut r = rng(12);
    let draws: Vec<f64> = (0..N).map(|_| table.sample(&mut r) as f64).collect();
    let mean = draws.iter().sum::<f64>() / N as f64;
    let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (N as f64 - 1.0);
    let want = fractional_poisson_mean(CountingProcess::N, 3, lambda, t).unwrap();
    assert!((mean - want).abs() < 4.0 * (var / N as f64).sqrt(), "{mean} vs {want}");
}

#[test]
fn fractional_poisson_frequencies() {
    let (lambda, t) = (2.0, 1.0);
    let mut r = rng(13);
    let mut counts = vec![0u64; 31];
    for _ in 0..N {
        let n = sample_fractional_poisson(CountingProcess::N, 3, lambda, t, &mut r).unwrap();
        counts[n.min(30)] += 1;
    }
    let table = PmfTable::build(CountingProcess::N, 3, lambda, t).unwrap();
    let probs: Vec<f64> = (0..31).map(|n| table.pmf(n)).collect();
    assert!(chi_square_gof(&counts, &probs, 0.001).unwrap().passed);
}

#[test]
fn vanishing_rate_never_deviates() {
    let mut r = rng(14);
    for _ in 0..10_000 {
        assert_eq!(sample_fractional_poisson(CountingProcess::M, 4, 1e-8, 1.0, &mut r).unwrap(), 0);
    }
}

#[test]
fn ks_null_rate_and_power() {
    let mut passes = 0;
    for rep in 0..100 {
        let mut r = RngStream::new(99, rep);
        let xs: Vec<f64> = (0..N).map(|_| r.random::<f64>()).collect();
        if ks_one_sample(&xs, |x| x.clamp(0.0, 1.0), 0.001).unwrap().passed {
            passes += 1;
        }
    }
    assert!(passes >= 99, "{passes}");

    let mut r = rng(15);
    let shifted: Vec<f64> = (0..N).map(|_| 0.02 + r.random::<f64>()).collect();
    assert!(!ks_one_sample(&shifted, |x| x.clamp(0.0, 1.0), 0.001).unwrap().passed);
}

#[test]
fn ks_two_sample_null() {
    let (mut a, mut b) = (rng(16), rng(17));
    let xs: Vec<f64> = (0..N).map(|_| a.random::<f64>()).collect();
    let ys: Vec<f64> = (0..N).map(|_| b.random::<f64>()).collect();
    assert!(ks_two_sample(&xs, &ys, 0.001).unwrap().passed);
}

#[test]
fn streams_are_reproducible() {
    let draw = |seed, stream| {
        let mut r = RngStream::new(seed, stream);
        (0..5).map(|_| r.random::<u64>()).collect::<Vec<_>>()
    };
    assert_eq!(draw(5, 3), draw(5, 3));
    assert_ne!(draw(5, 3), draw(5, 4));
}
