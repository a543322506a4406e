//! The acceptance suite: twelve groups of checks comparing closed forms with
//! quadrature, with each other and with simulation.

use std::f64::consts::PI;
use std::time::Instant;

use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use super::{
    ball_cf_quadrature, ball_quadrature, chi_square_gof, empirical_cf, empirical_cf_tolerance,
    kolmogorov_quantile, ks_one_sample, ks_two_sample, pde_check, Axis, CheckRecord, GridSpec,
    Inputs, KsResult, TabulatedCdf, VerificationReport,
};
use crate::analytic::{
    char_fun, comparison_density_at, conditional_density, conditional_law, marginal_density,
    marginal_law, radial_moment, surface_mass, u3_density_at, u3_total_mass,
    unconditional_at_gap, unconditional_density, catalan, ComparisonLaw, Ctx, EvenFlightLaw, Law,
    UncCtx,
};
use crate::error::{param, Error, Result};
use crate::flight::{project, simulate, simulate_u3, Deviations, FlightModel, FlightSpec};
use crate::montecarlo::{run_sharded, simulate_endpoints};
use crate::quad::interval_with_distances_tol;
use crate::sampling::{
    fractional_poisson_mean, fractional_poisson_pmf, CountingProcess, PmfTable, PoissonCondition,
};
use crate::specfun::bessel::jnu;
use crate::specfun::{lgamma, ln_mittag_leffler, mittag_leffler, MlfParams};

/// Significance level of every KS and chi-square test in the suite.
pub const ALPHA: f64 = 0.001;

const C: f64 = 1.5;
const T: f64 = 0.8;

/// Number and short title of every criterion.
pub const CRITERIA: [(u32, &str); 12] = [
    (1, "uniform-law triples"),
    (2, "normalization"),
    (3, "characteristic function"),
    (4, "moments"),
    (5, "X3/Y3 identity"),
    (6, "marginal cascade"),
    (7, "order-statistics representation"),
    (8, "fractional Poisson counter"),
    (9, "unconditional laws"),
    (10, "even-Poisson flight"),
    (11, "telegraph-type PDE"),
    (12, "special-function identities"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuiteScale {
    /// Monte Carlo sizes divided by ten.
    Quick,
    /// Sample sizes as stated by the criteria.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub shards: usize,
    pub scale: SuiteScale,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 7, shards: 8, scale: SuiteScale::Full }
    }
}

impl SuiteConfig {
    fn samples(&self, full: usize) -> usize {
        match self.scale {
            SuiteScale::Full => full,
            SuiteScale::Quick => (full / 10).max(10_000),
        }
    }

    /// Seed of the check tagged `tag`, independent across tags.
    fn seed_for(&self, tag: u64) -> u64 {
        splitmix64(self.seed ^ splitmix64(tag))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs every criterion in order.
pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let mut checks = Vec::new();
    for (id, _) in CRITERIA {
        checks.extend(run_criterion(id, cfg).expect("criterion ids are valid"));
    }
    VerificationReport { checks }
}

/// Runs the checks of criterion `id` (1 to 12).
pub fn run_criterion(id: u32, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut s = Session { cfg: *cfg, criterion: id, records: Vec::new() };
    match id {
        1 => s.uniform_triples(),
        2 => s.normalization(),
        3 => s.characteristic_function(),
        4 => s.moments(),
        5 => s.x3_y3_identity(),
        6 => s.marginal_cascade(),
        7 => s.order_statistics(),
        8 => s.fractional_poisson(),
        9 => s.unconditional(),
        10 => s.even_poisson(),
        11 => s.telegraph_pde(),
        12 => s.special_functions(),
        _ => return param(format!("criterion must be in 1..=12, got {id}")),
    }
    Ok(s.records)
}

struct Outcome {
    statistic: Option<f64>,
    tolerance: Option<f64>,
    passed: bool,
    detail: Option<String>,
}

impl Outcome {
    fn below(statistic: f64, tolerance: f64) -> Self {
        Self { statistic: Some(statistic), tolerance: None, passed: statistic <= tolerance, detail: None }
    }

    fn ks(r: KsResult) -> Self {
        Self {
            statistic: Some(r.statistic),
            tolerance: Some(r.critical_value_at_alpha),
            passed: r.passed,
            detail: None,
        }
    }

    fn detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }
}

struct Session {
    cfg: SuiteConfig,
    criterion: u32,
    records: Vec<CheckRecord>,
}

fn law_name(law: Law) -> String {
    format!("{law:?}")
}

fn model_of(law: Law) -> FlightModel {
    match law {
        Law::X => FlightModel::StepLawA,
        Law::Y => FlightModel::StepLawB,
    }
}

fn laws_for(d: usize) -> Vec<Law> {
    [Law::X, Law::Y].into_iter().filter(|l| l.check_dim(d).is_ok()).collect()
}

/// Largest relative deviation `|got - want| / |want|`, with `want` the second
/// element of each pair.
fn worst_relative(pairs: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    pairs
        .into_iter()
        .map(|(got, want)| ((got - want) / want).abs())
        .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn ks_critical(n: usize) -> f64 {
    kolmogorov_quantile(ALPHA).expect("alpha is valid") / (n as f64).sqrt()
}

fn ks_two_critical(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    kolmogorov_quantile(ALPHA).expect("alpha is valid") * ((n + m) / (n * m)).sqrt()
}

impl Session {
    fn record<F>(&mut self, name: impl Into<String>, inputs: Inputs, tolerance: Option<f64>, f: F)
    where
        F: FnOnce() -> Result<Outcome>,
    {
        let start = Instant::now();
        let outcome = f();
        let wall_time_s = start.elapsed().as_secs_f64();
        let record = match outcome {
            Ok(o) => CheckRecord {
                criterion: self.criterion,
                name: name.into(),
                inputs,
                statistic: o.statistic.filter(|v| v.is_finite()),
                tolerance: o.tolerance.or(tolerance),
                passed: o.passed && o.statistic.is_none_or(f64::is_finite),
                wall_time_s,
                detail: o.detail,
            },
            Err(e) => CheckRecord {
                criterion: self.criterion,
                name: name.into(),
                inputs,
                statistic: None,
                tolerance,
                passed: false,
                wall_time_s,
                detail: Some(e.to_string()),
            },
        };
        self.records.push(record);
    }

    fn tag(&self, index: u64) -> u64 {
        self.cfg.seed_for(u64::from(self.criterion) * 1000 + index)
    }

    fn uniform_triples(&mut self) {
        let samples = self.cfg.samples(100_000);
        let cases = [(Law::X, 2, 2), (Law::X, 3, 1), (Law::Y, 3, 2), (Law::Y, 4, 1)];
        for (i, (law, d, n)) in cases.into_iter().enumerate() {
            let seed = self.tag(i as u64);
            let shards = self.cfg.shards;
            let inputs = Inputs {
                law: Some(law_name(law)),
                d: Some(d),
                n: Some(n),
                c: Some(C),
                t: Some(T),
                seed: Some(seed),
                samples: Some(samples),
                ..Default::default()
            };
            self.record(format!("uniform_radius_{law:?}_d{d}_n{n}"), inputs, Some(ks_critical(samples)), || {
                let spec = FlightSpec::new(model_of(law), d, C, T, Deviations::Fixed(n))?;
                let batch = simulate_endpoints(&spec, samples, seed, shards)?;
                let ct = C * T;
                let r = ks_one_sample(&batch.radii(), |r| (r / ct).clamp(0.0, 1.0).powi(d as i32), ALPHA)?;
                Ok(Outcome::ks(r))
            });
        }
    }

    fn normalization(&mut self) {
        for d in 2..=6 {
            for law in laws_for(d) {
                let inputs = Inputs {
                    law: Some(law_name(law)),
                    d: Some(d),
                    c: Some(C),
                    t: Some(T),
                    extra: Some("n = 1..4".into()),
                    ..Default::default()
                };
                self.record(format!("ball_mass_{law:?}_d{d}"), inputs, Some(1e-8), || {
                    let mut worst: f64 = 0.0;
                    for n in 1..=4 {
                        let ctx = Ctx::new(d, n, C, T)?;
                        let dens = conditional_law(law, &ctx)?;
                        let mass = ball_quadrature(|_, w| dens.at_gap(w), d, ctx.reach(), 1e-10)?;
                        worst = worst.max((mass - 1.0).abs());
                    }
                    Ok(Outcome::below(worst, 1e-8))
                });
            }
        }
    }

    fn characteristic_function(&mut self) {
        let cases = [(Law::X, 2, 1), (Law::X, 3, 2), (Law::Y, 4, 1), (Law::X, 5, 3)];
        let alphas = [0.5, 1.0, 3.0, 7.0];
        for (law, d, n) in cases {
            let inputs = Inputs {
                law: Some(law_name(law)),
                d: Some(d),
                n: Some(n),
                c: Some(C),
                t: Some(T),
                extra: Some("alpha = 0.5, 1, 3, 7".into()),
                ..Default::default()
            };
            self.record(format!("hankel_cf_{law:?}_d{d}_n{n}"), inputs, Some(1e-6), || {
                let ctx = Ctx::new(d, n, C, T)?;
                let dens = conditional_law(law, &ctx)?;
                let mut worst: f64 = 0.0;
                for a in alphas {
                    let q = ball_cf_quadrature(|_, w| dens.at_gap(w), d, ctx.reach(), a, 1e-10)?;
                    worst = worst.max((q - char_fun(law, &ctx, a)?).abs());
                }
                Ok(Outcome::below(worst, 1e-6))
            });
        }

        let samples = self.cfg.samples(1_000_000);
        let grid = [0.5, 1.0, 2.0, 3.0, 5.0, 7.0];
        let mc_cases = [(Law::X, 2, 1), (Law::X, 3, 2), (Law::Y, 4, 1), (Law::Y, 4, 2), (Law::X, 5, 3)];
        for (i, (law, d, n)) in mc_cases.into_iter().enumerate() {
            let seed = self.tag(i as u64);
            let shards = self.cfg.shards;
            let tol = empirical_cf_tolerance(samples);
            let inputs = Inputs {
                law: Some(law_name(law)),
                d: Some(d),
                n: Some(n),
                c: Some(C),
                t: Some(T),
                seed: Some(seed),
                samples: Some(samples),
                extra: Some("alpha = 0.5, 1, 2, 3, 5, 7".into()),
                ..Default::default()
            };
            self.record(format!("empirical_cf_{law:?}_d{d}_n{n}"), inputs, Some(tol), || {
                let ctx = Ctx::new(d, n, C, T)?;
                let spec = FlightSpec::new(model_of(law), d, C, T, Deviations::Fixed(n))?;
                let batch = simulate_endpoints(&spec, samples, seed, shards)?;
                let ecf = empirical_cf(&batch.coords, d, 0, &grid)?;
                let mut worst: f64 = 0.0;
                for (a, e) in grid.iter().zip(&ecf) {
                    worst = worst.max((e - char_fun(law, &ctx, *a)?).abs());
                }
                Ok(Outcome::below(worst, tol))
            });
        }
    }

    fn moments(&mut self) {
        for law in [Law::X, Law::Y] {
            let inputs = Inputs {
                law: Some(law_name(law)),
                c: Some(C),
                t: Some(T),
                extra: Some("d up to 6, n = 1..4, p = 1..4".into()),
                ..Default::default()
            };
            self.record(format!("moment_quadrature_{law:?}"), inputs, Some(1e-8), || {
                let mut pairs = Vec::new();
                for d in law.step_law().min_dim()..=6 {
                    for n in 1..=4 {
                        let ctx = Ctx::new(d, n, C, T)?;
                        let dens = conditional_law(law, &ctx)?;
                        for p in 1..=4u32 {
                            let q = ball_quadrature(
                                |r, w| r.powi(p as i32) * dens.at_gap(w),
                                d,
                                ctx.reach(),
                                1e-11,
                            )?;
                            pairs.push((q, radial_moment(law, &ctx, p)?));
                        }
                    }
                }
                Ok(Outcome::below(worst_relative(pairs), 1e-8))
            });
        }

        let inputs = Inputs { d: Some(3), n: Some(1), c: Some(C), t: Some(T), ..Default::default() };
        self.record("second_moment_displays", inputs, Some(1e-14), || {
            let ct2 = (C * T).powi(2);
            let x = radial_moment(Law::X, &Ctx::new(3, 1, C, T)?, 2)?;
            let y = radial_moment(Law::Y, &Ctx::new(4, 1, C, T)?, 2)?;
            let worst = worst_relative([(x, 0.6 * ct2), (y, 4.0 / 6.0 * ct2)]);
            Ok(Outcome::below(worst, 1e-14).detail("E R^2 = 0.6 (ct)^2 for X, d=3, n=1; 4/6 (ct)^2 for Y, d=4, n=1"))
        });

        let samples = self.cfg.samples(1_000_000);
        let seed = self.tag(0);
        let shards = self.cfg.shards;
        let inputs = Inputs {
            law: Some("X".into()),
            d: Some(3),
            n: Some(1),
            c: Some(C),
            t: Some(T),
            seed: Some(seed),
            samples: Some(samples),
            extra: Some("p = 1..4".into()),
            ..Default::default()
        };
        self.record("moment_monte_carlo_X_d3_n1", inputs, Some(4.0), || {
            let ctx = Ctx::new(3, 1, C, T)?;
            let spec = FlightSpec::new(FlightModel::StepLawA, 3, C, T, Deviations::Fixed(1))?;
            let radii = simulate_endpoints(&spec, samples, seed, shards)?.radii();
            let nf = radii.len() as f64;
            let mut worst: f64 = 0.0;
            for p in 1..=4u32 {
                let vals: Vec<f64> = radii.iter().map(|r| r.powi(p as i32)).collect();
                let mean = vals.iter().sum::<f64>() / nf;
                let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0);
                let z = (mean - radial_moment(Law::X, &ctx, p)?).abs() / (var / nf).sqrt();
                worst = worst.max(z);
            }
            Ok(Outcome::below(worst, 4.0).detail("largest |z| over p"))
        });
    }

    fn x3_y3_identity(&mut self) {
        for n in 1..=3 {
            let inputs = Inputs {
                d: Some(3),
                n: Some(n),
                c: Some(C),
                t: Some(T),
                extra: Some(format!("Y with {} deviations, 200 radii", 2 * n)),
                ..Default::default()
            };
            self.record(format!("pointwise_X_n{n}_Y_n{}", 2 * n), inputs, Some(1e-12), || {
                let x = Ctx::new(3, n, C, T)?;
                let y = Ctx::new(3, 2 * n, C, T)?;
                let ct = x.reach();
                let mut pairs = Vec::with_capacity(600);
                for i in 0..200 {
                    let r = ct * i as f64 / 200.0;
                    let p = [r, 0.0, 0.0];
                    let px = conditional_density(Law::X, &x, &p)?;
                    let py = conditional_density(Law::Y, &y, &p)?;
                    let w = (ct - r) * (ct + r);
                    pairs.push((py, px));
                    pairs.push((px, literal_x_law(3, n as f64, ct, w)));
                    pairs.push((py, literal_y_law(3, (2 * n) as f64, ct, w)));
                }
                Ok(Outcome::below(worst_relative(pairs), 1e-12)
                    .detail("also against each law's own closed form with its own Gamma ratio"))
            });
        }
        let samples = self.cfg.samples(100_000);
        for n in 1..=3 {
            let (sx, sy) = (self.tag(2 * n as u64), self.tag(2 * n as u64 + 1));
            let shards = self.cfg.shards;
            let inputs = Inputs {
                d: Some(3),
                n: Some(n),
                c: Some(C),
                t: Some(T),
                seed: Some(sx),
                samples: Some(samples),
                extra: Some(format!("Y seed {sy}, Y deviations {}", 2 * n)),
                ..Default::default()
            };
            self.record(
                format!("radius_two_sample_X_n{n}_Y_n{}", 2 * n),
                inputs,
                Some(ks_two_critical(samples, samples)),
                || {
                    let a = FlightSpec::new(FlightModel::StepLawA, 3, C, T, Deviations::Fixed(n))?;
                    let b = FlightSpec::new(FlightModel::StepLawB, 3, C, T, Deviations::Fixed(2 * n))?;
                    let ra = simulate_endpoints(&a, samples, sx, shards)?.radii();
                    let rb = simulate_endpoints(&b, samples, sy, shards)?.radii();
                    Ok(Outcome::ks(ks_two_sample(&ra, &rb, ALPHA)?))
                },
            );
        }
    }

    fn marginal_cascade(&mut self) {
        let base = [0.3, -0.2, 0.25];
        for law in [Law::X, Law::Y] {
            for n in 1..=2 {
                for m in [3usize, 2, 1] {
                    let inputs = Inputs {
                        law: Some(law_name(law)),
                        d: Some(4),
                        n: Some(n),
                        m: Some(m),
                        c: Some(C),
                        t: Some(T),
                        ..Default::default()
                    };
                    self.record(format!("cascade_{law:?}_n{n}_m{}_to_m{m}", m + 1), inputs, Some(1e-8), || {
                        let ctx = Ctx::new(4, n, C, T)?;
                        let upper = marginal_law(law, &ctx, m + 1)?;
                        let ct = ctx.reach();
                        let mut pairs = Vec::new();
                        for scale in [0.0, 1.0, 2.0] {
                            let x: Vec<f64> = base[..m].iter().map(|v| v * scale * ct).collect();
                            let r2: f64 = x.iter().map(|v| v * v).sum();
                            let half = (ct * ct - r2).sqrt();
                            let q = interval_with_distances_tol(
                                |_, da, db| upper.at_gap(da * db),
                                -half,
                                half,
                                1e-12,
                                0.0,
                            )?
                            .value;
                            pairs.push((q, marginal_density(law, &ctx, m, &x)?));
                        }
                        Ok(Outcome::below(worst_relative(pairs), 1e-8))
                    });
                }
            }
        }

        let inputs = Inputs {
            law: Some("X".into()),
            d: Some(3),
            m: Some(1),
            c: Some(1.0),
            t: Some(1.0),
            extra: Some("n = 1..8".into()),
            ..Default::default()
        };
        self.record("telegraph_coefficients_d3_m1", inputs, Some(1e-12), || {
            let mut pairs = Vec::new();
            for n in 1..=8usize {
                let law = marginal_law(Law::X, &Ctx::new(3, n, 1.0, 1.0)?, 1)?;
                if law.exponent() != n as f64 {
                    return Err(Error::Parameter(format!("exponent {} for n = {n}", law.exponent())));
                }
                // (2n+1)! / (n!)^2 / 2^{2n+1} as a product of exact small factors
                let mut coef = 1.0;
                for j in 1..=n {
                    coef *= (n + j) as f64 / j as f64;
                }
                coef *= (2 * n + 1) as f64 / 2f64.powi(2 * n as i32 + 1);
                pairs.push((law.amplitude(), coef));
            }
            Ok(Outcome::below(worst_relative(pairs), 1e-12))
        });
    }

    fn order_statistics(&mut self) {
        let (d, n) = (3usize, 2usize);
        let samples = self.cfg.samples(100_000);
        let (sb, sf) = (self.tag(0), self.tag(1));
        let shards = self.cfg.shards;
        let inputs = Inputs {
            law: Some("X".into()),
            d: Some(d),
            n: Some(n),
            m: Some(1),
            c: Some(C),
            t: Some(T),
            seed: Some(sf),
            samples: Some(samples),
            extra: Some(format!("Beta seed {sb}")),
            ..Default::default()
        };
        self.record("line_beta_representation", inputs, Some(ks_two_critical(samples, samples)), || {
            let ct = C * T;
            let shape = (n + 1) as f64 * (d - 1) as f64 / 2.0;
            let beta = Beta::new(shape, shape).map_err(|e| Error::Parameter(e.to_string()))?;
            let line: Vec<f64> = run_sharded(samples, sb, shards, |rng, count| {
                (0..count).map(|_| ct * (2.0 * beta.sample(rng) - 1.0)).collect()
            });
            let spec = FlightSpec::new(FlightModel::StepLawA, d, C, T, Deviations::Fixed(n))?;
            let projected: Vec<Result<f64>> = run_sharded(samples, sf, shards, |rng, count| {
                (0..count)
                    .map(|_| Ok(project(&simulate(&spec, rng)?, 1)?[0]))
                    .collect()
            });
            let projected = projected.into_iter().collect::<Result<Vec<f64>>>()?;
            Ok(Outcome::ks(ks_two_sample(&line, &projected, ALPHA)?))
        });
    }

    fn fractional_poisson(&mut self) {
        let grid = [0.5, 1.0, 5.0, 20.0];
        let t = 2.0;
        let counters = [
            (CountingProcess::N, 2),
            (CountingProcess::N, 3),
            (CountingProcess::N, 4),
            (CountingProcess::N, 5),
            (CountingProcess::M, 3),
            (CountingProcess::M, 4),
            (CountingProcess::M, 5),
        ];
        for (process, d) in counters {
            let inputs = Inputs {
                d: Some(d),
                t: Some(t),
                extra: Some(format!("{process:?}, lambda t = 0.5, 1, 5, 20")),
                ..Default::default()
            };
            self.record(format!("pmf_sum_{process:?}_d{d}"), inputs.clone(), Some(1e-10), || {
                let mut worst: f64 = 0.0;
                for x in grid {
                    let (sum, _) = pmf_sums(process, d, x / t, t)?;
                    worst = worst.max((sum - 1.0).abs());
                }
                Ok(Outcome::below(worst, 1e-10))
            });
            self.record(format!("mean_closed_form_{process:?}_d{d}"), inputs, Some(1e-8), || {
                let mut pairs = Vec::new();
                for x in grid {
                    let (_, mean) = pmf_sums(process, d, x / t, t)?;
                    pairs.push((fractional_poisson_mean(process, d, x / t, t)?, mean));
                }
                Ok(Outcome::below(worst_relative(pairs), 1e-8))
            });
        }

        let inputs = Inputs { t: Some(t), extra: Some("lambda t = 0.5, 1, 5, 20".into()), ..Default::default() };
        self.record("mean_displays_N3_M4", inputs.clone(), Some(1e-8), || {
            let mut pairs = Vec::new();
            for x in grid {
                let ratio = |a: f64, b: f64| -> Result<f64> {
                    let num = ln_mittag_leffler(MlfParams::new(1.0, a)?, x)?;
                    let den = ln_mittag_leffler(MlfParams::new(1.0, b)?, x)?;
                    Ok((num - den).exp())
                };
                let n3 = x - x / 2.0 * ratio(2.5, 1.5)?;
                let m4 = x * (1.0 - ratio(3.0, 2.0)?);
                pairs.push((n3, pmf_sums(CountingProcess::N, 3, x / t, t)?.1));
                pairs.push((m4, pmf_sums(CountingProcess::M, 4, x / t, t)?.1));
            }
            Ok(Outcome::below(worst_relative(pairs), 1e-8))
        });
        self.record("mean_below_poisson_N3", inputs, Some(1.0), || {
            let mut worst: f64 = 0.0;
            for x in grid {
                worst = worst.max(fractional_poisson_mean(CountingProcess::N, 3, x / t, t)? / x);
            }
            Ok(Outcome { statistic: Some(worst), tolerance: None, passed: worst < 1.0, detail: Some("largest E N / (lambda t)".into()) })
        });

        let samples = self.cfg.samples(100_000);
        let draws = [
            (CountingProcess::N, 2, 1.0),
            (CountingProcess::N, 3, 5.0),
            (CountingProcess::M, 4, 5.0),
            (CountingProcess::M, 5, 20.0),
        ];
        for (i, (process, d, x)) in draws.into_iter().enumerate() {
            let seed = self.tag(i as u64);
            let shards = self.cfg.shards;
            let inputs = Inputs {
                d: Some(d),
                lambda: Some(x / t),
                t: Some(t),
                seed: Some(seed),
                samples: Some(samples),
                extra: Some(format!("{process:?}")),
                ..Default::default()
            };
            self.record(format!("pmf_chi_square_{process:?}_d{d}_lt{x}"), inputs, None, || {
                let table = PmfTable::build(process, d, x / t, t)?;
                let probs = table.probabilities().to_vec();
                let draws: Vec<usize> = run_sharded(samples, seed, shards, |rng, count| {
                    (0..count).map(|_| table.sample(rng)).collect()
                });
                let mut counts = vec![0u64; probs.len()];
                for k in draws {
                    counts[k.min(probs.len() - 1)] += 1;
                }
                let r = chi_square_gof(&counts, &probs, ALPHA)?;
                Ok(Outcome {
                    statistic: Some(r.statistic),
                    tolerance: Some(r.critical_value_at_alpha),
                    passed: r.passed,
                    detail: Some(format!("{} degrees of freedom", r.degrees_of_freedom)),
                })
            });
        }
    }

    fn unconditional(&mut self) {
        let lambda = 2.0;
        let samples = self.cfg.samples(100_000);
        for d in 2..=5 {
            for law in laws_for(d) {
                let inputs = Inputs {
                    law: Some(law_name(law)),
                    d: Some(d),
                    lambda: Some(lambda),
                    c: Some(C),
                    t: Some(T),
                    ..Default::default()
                };
                self.record(format!("mixture_oracle_{law:?}_d{d}"), inputs.clone(), Some(1e-10), || {
                    let u = UncCtx::new(d, lambda, C, T)?;
                    let ct = u.reach();
                    let dir = unit_direction(d);
                    let mut pairs = Vec::new();
                    for i in 0..20 {
                        let r = ct * (i as f64 + 0.5) / 20.0;
                        let x: Vec<f64> = dir.iter().map(|v| v * r).collect();
                        pairs.push((mixture(law, d, lambda, &x)?, unconditional_density(law, &u, &x)?));
                    }
                    Ok(Outcome::below(worst_relative(pairs), 1e-10))
                });
                self.record(format!("interior_plus_surface_{law:?}_d{d}"), inputs, Some(1e-8), || {
                    let u = UncCtx::new(d, lambda, C, T)?;
                    let interior = ball_quadrature(
                        |_, w| unconditional_at_gap(law, &u, w).unwrap_or(f64::NAN),
                        d,
                        u.reach(),
                        1e-10,
                    )?;
                    let total = interior + surface_mass(law, d, lambda, T)?;
                    Ok(Outcome::below((total - 1.0).abs(), 1e-8))
                });
                let seed = self.tag((10 * d) as u64 + law as u64);
                let shards = self.cfg.shards;
                let inputs = Inputs {
                    law: Some(law_name(law)),
                    d: Some(d),
                    lambda: Some(lambda),
                    c: Some(C),
                    t: Some(T),
                    seed: Some(seed),
                    samples: Some(samples),
                    ..Default::default()
                };
                self.record(format!("surface_frequency_{law:?}_d{d}"), inputs, Some(4.0), || {
                    let spec = FlightSpec::new(model_of(law), d, C, T, Deviations::Randomized(lambda))?;
                    let batch = simulate_endpoints(&spec, samples, seed, shards)?;
                    let zero = batch.deviations.iter().filter(|&&n| n == 0).count() as f64;
                    let nf = batch.len() as f64;
                    let p = surface_mass(law, d, lambda, T)?;
                    let z = (zero / nf - p).abs() / (p * (1.0 - p) / nf).sqrt();
                    Ok(Outcome::below(z, 4.0).detail(format!("frequency {} vs {p}", zero / nf)))
                });
            }
        }
    }

    fn even_poisson(&mut self) {
        let lambda = 1.5;
        let ct = C * T;
        let samples = self.cfg.samples(100_000);
        let shards = self.cfg.shards;

        let seed = self.tag(0);
        let inputs = Inputs {
            d: Some(3),
            lambda: Some(lambda),
            c: Some(C),
            t: Some(T),
            seed: Some(seed),
            samples: Some(samples),
            extra: Some("N(t) = 3".into()),
            ..Default::default()
        };
        self.record("three_events_uniform_radius", inputs, Some(ks_critical(samples)), || {
            let radii = u3_radii(lambda, PoissonCondition::Events(3), samples, seed, shards)?;
            Ok(Outcome::ks(ks_one_sample(&radii, |r| (r / ct).clamp(0.0, 1.0).powi(3), ALPHA)?))
        });

        let inputs = Inputs { d: Some(3), c: Some(C), t: Some(T), extra: Some("N(t) = 2".into()), ..Default::default() };
        self.record("two_events_log_law_mass", inputs, Some(1e-8), || {
            let cdf = two_event_radial_cdf(lambda, ct)?;
            Ok(Outcome::below((cdf.total() - 1.0).abs(), 1e-8))
        });
        let seed = self.tag(1);
        let inputs = Inputs {
            d: Some(3),
            lambda: Some(lambda),
            c: Some(C),
            t: Some(T),
            seed: Some(seed),
            samples: Some(samples),
            extra: Some("N(t) = 2".into()),
            ..Default::default()
        };
        self.record("two_events_log_law_radius", inputs, Some(ks_critical(samples)), || {
            let cdf = two_event_radial_cdf(lambda, ct)?;
            let radii = u3_radii(lambda, PoissonCondition::Events(2), samples, seed, shards)?;
            Ok(Outcome::ks(ks_one_sample(&radii, |r| cdf.cdf(r), ALPHA)?))
        });

        let inputs = Inputs { d: Some(3), m: Some(1), lambda: Some(lambda), c: Some(C), t: Some(T), ..Default::default() };
        self.record("odd_line_law_mass", inputs, Some(1e-8), || {
            let q = interval_with_distances_tol(
                |x, da, db| line_odd(lambda, x, da * db),
                -ct,
                ct,
                1e-12,
                0.0,
            )?
            .value;
            let want = (-lambda * T).exp() * (lambda * T).sinh();
            Ok(Outcome::below(((q - want) / want).abs(), 1e-8))
        });
        let seed = self.tag(2);
        let inputs = Inputs {
            d: Some(3),
            m: Some(1),
            lambda: Some(lambda),
            c: Some(C),
            t: Some(T),
            seed: Some(seed),
            samples: Some(samples),
            extra: Some("N(t) odd".into()),
            ..Default::default()
        };
        self.record("odd_line_projection", inputs, Some(ks_critical(samples)), || {
            let cdf = TabulatedCdf::new(|x, da, db| line_odd(lambda, x, da * db), -ct, ct, 4000, 1e-10)?;
            let rows: Vec<Result<f64>> = run_sharded(samples, seed, shards, |rng, count| {
                (0..count)
                    .map(|_| {
                        let traj = simulate_u3(lambda, C, T, PoissonCondition::RandomOdd, rng)?;
                        Ok(project(&traj, 1)?[0])
                    })
                    .collect()
            });
            let xs = rows.into_iter().collect::<Result<Vec<f64>>>()?;
            let mass = u3_total_mass(EvenFlightLaw::LineOdd, lambda, T);
            Ok(Outcome::ks(ks_one_sample(&xs, |x| cdf.cdf(x), ALPHA)?)
                .detail(format!("tabulated mass {} vs {mass}", cdf.total())))
        });
    }

    fn telegraph_pde(&mut self) {
        for (m_exp, d) in [(1.0, 2usize), (2.0, 3), (-1.0, 3)] {
            let inputs = Inputs {
                d: Some(d),
                c: Some(1.0),
                extra: Some(format!("exponent {m_exp}, t in [1.5, 2], x in [-0.2, 0.2]^{d}, 9 points, 3 levels")),
                ..Default::default()
            };
            self.record(format!("fd_order_m{m_exp}_d{d}"), inputs, Some(super::MIN_ORDER), || {
                let mut axes = vec![Axis { lower: 1.5, upper: 2.0, points: 9 }];
                axes.extend((0..d).map(|_| Axis { lower: -0.2, upper: 0.2, points: 9 }));
                let report = pde_check(m_exp, d, 1.0, &GridSpec::new(axes)?, 3)?;
                let residuals: Vec<String> = report.levels.iter().map(|l| format!("{:.3e}", l.residual)).collect();
                let mut detail = format!("residuals {}", residuals.join(", "));
                if report.exact {
                    detail.push_str("; every level at the rounding floor, the stencil is exact for this q");
                }
                Ok(Outcome {
                    statistic: report.min_order(),
                    tolerance: None,
                    passed: report.passed,
                    detail: Some(detail),
                })
            });
        }
    }

    fn special_functions(&mut self) {
        let inputs = Inputs { extra: Some("x = 0, 0.1, ..., 20".into()), ..Default::default() };
        self.record("mittag_leffler_exponential", inputs, Some(1e-12), || {
            let e11 = MlfParams::new(1.0, 1.0)?;
            let e12 = MlfParams::new(1.0, 2.0)?;
            let mut pairs = Vec::new();
            for i in 0..=200 {
                let x = i as f64 * 0.1;
                pairs.push((mittag_leffler(e11, x)?, x.exp()));
                let want = if x == 0.0 { 1.0 } else { x.exp_m1() / x };
                pairs.push((mittag_leffler(e12, x)?, want));
            }
            Ok(Outcome::below(worst_relative(pairs), 1e-12))
        });

        let lengths = [0.7, 3.0, 7.5];
        let inputs = Inputs { extra: Some("a = 0.7, 3, 7.5".into()), ..Default::default() };
        self.record("bessel_product_convolution", inputs.clone(), Some(1e-8), || {
            let mut worst: f64 = 0.0;
            for (mu, nu) in [(0.5, 0.5), (1.0, 1.0), (0.0, 1.5), (1.5, 2.5), (0.5, 4.0)] {
                for a in lengths {
                    let q = interval_with_distances_tol(
                        |_, x, y| x.powf(mu) * y.powf(nu) * jnu(mu, x) * jnu(nu, y),
                        0.0,
                        a,
                        1e-13,
                        1e-15,
                    )?
                    .value;
                    let ln_coef = lgamma(mu + 0.5) + lgamma(nu + 0.5)
                        - 0.5 * (2.0 * PI).ln()
                        - lgamma(mu + nu + 1.0);
                    let want = ln_coef.exp() * a.powf(mu + nu + 0.5) * jnu(mu + nu + 0.5, a);
                    worst = worst.max((q - want).abs() / want.abs().max(1.0));
                }
            }
            Ok(Outcome::below(worst, 1e-8))
        });
        self.record("bessel_ratio_convolution", inputs, Some(1e-8), || {
            let mut worst: f64 = 0.0;
            for (mu, nu) in [(0.5, 0.5), (1.0, 1.0), (0.5, 1.0), (1.5, 2.0), (1.0, 3.0)] {
                for a in lengths {
                    let q = interval_with_distances_tol(
                        |_, x, y| jnu(mu, x) * jnu(nu, y) / (x * y),
                        0.0,
                        a,
                        1e-13,
                        1e-15,
                    )?
                    .value;
                    let want = (1.0 / mu + 1.0 / nu) * jnu(mu + nu, a) / a;
                    worst = worst.max((q - want).abs() / want.abs().max(1.0));
                }
            }
            Ok(Outcome::below(worst, 1e-8))
        });

        let inputs = Inputs { c: Some(C), t: Some(T), m: Some(1), extra: Some("k = 2, j = 1, 2".into()), ..Default::default() };
        self.record("wigner_catalan_moments", inputs, Some(1e-10), || {
            let law = ComparisonLaw::Wigner { k: 2, m: 1, c: C, t: T };
            let ct = C * T;
            let mut pairs = Vec::new();
            for j in 1..=2u32 {
                let q = interval_with_distances_tol(
                    |x, da, db| x.powi(2 * j as i32) * comparison_density_at(&law, da * db).unwrap_or(f64::NAN),
                    -ct,
                    ct,
                    1e-13,
                    0.0,
                )?
                .value;
                let want = catalan(j) as f64 / 4f64.powi(j as i32) * ct.powi(2 * j as i32);
                pairs.push((q, want));
            }
            Ok(Outcome::below(worst_relative(pairs), 1e-10))
        });
    }
}

/// `(sum of pmf, sum of n pmf)` over the support, summed until the terms
/// are negligible.
fn pmf_sums(process: CountingProcess, d: usize, lambda: f64, t: f64) -> Result<(f64, f64)> {
    let (mut mass, mut mean, mut prev) = (0.0, 0.0, 0.0);
    for n in 0..crate::sampling::PMF_MAX_TERMS {
        let p = fractional_poisson_pmf(process, d, lambda, t, n)?;
        mass += p;
        mean += n as f64 * p;
        if p < prev && p < 1e-18 {
            return Ok((mass, mean));
        }
        prev = p;
    }
    Err(Error::Truncation("pmf tail not reached".into()))
}

/// Step-law-A density written with its own exponents:
/// `Gamma((n+1)(d-1)/2 + 1/2) / Gamma(n(d-1)/2) w^{n(d-1)/2 - 1} / (pi^{d/2} (ct)^{(n+1)(d-1)-1})`.
fn literal_x_law(d: usize, n: f64, ct: f64, w: f64) -> f64 {
    let d = d as f64;
    let ln = lgamma((n + 1.0) / 2.0 * (d - 1.0) + 0.5) - lgamma(n / 2.0 * (d - 1.0))
        + (n / 2.0 * (d - 1.0) - 1.0) * w.ln()
        - d / 2.0 * PI.ln()
        - ((n + 1.0) * (d - 1.0) - 1.0) * ct.ln();
    ln.exp()
}

/// Step-law-B density:
/// `Gamma((n+1)(d/2-1) + 1) / Gamma(n(d/2-1)) w^{n(d/2-1) - 1} / (pi^{d/2} (ct)^{2(n+1)(d/2-1)})`.
fn literal_y_law(d: usize, n: f64, ct: f64, w: f64) -> f64 {
    let h = d as f64 / 2.0 - 1.0;
    let ln = lgamma((n + 1.0) * h + 1.0) - lgamma(n * h) + (n * h - 1.0) * w.ln()
        - d as f64 / 2.0 * PI.ln()
        - 2.0 * (n + 1.0) * h * ct.ln();
    ln.exp()
}

/// Fixed unit vector with all coordinates non-zero.
fn unit_direction(d: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..d).map(|i| if i % 2 == 0 { 1.0 + i as f64 } else { -0.5 - i as f64 }).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// `sum_{n>=1} P(count = n) p_n(x)` truncated once the pmf drops below 1e-16.
fn mixture(law: Law, d: usize, lambda: f64, x: &[f64]) -> Result<f64> {
    let process = law.process();
    let (mut sum, mut prev) = (0.0, 0.0);
    for n in 1..crate::sampling::PMF_MAX_TERMS {
        let p = fractional_poisson_pmf(process, d, lambda, T, n)?;
        sum += p * conditional_density(law, &Ctx::new(d, n, C, T)?, x)?;
        if p < prev && p < 1e-16 {
            return Ok(sum);
        }
        prev = p;
    }
    Err(Error::Truncation("mixture tail not reached".into()))
}

fn line_odd(lambda: f64, x: f64, w: f64) -> f64 {
    u3_density_at(EvenFlightLaw::LineOdd, lambda, C, T, x.abs(), w).unwrap_or(f64::NAN)
}

fn two_event_radial_cdf(lambda: f64, ct: f64) -> Result<TabulatedCdf> {
    TabulatedCdf::new(
        |r, _, db| {
            let w = db * (ct + r);
            4.0 * PI * r * r * u3_density_at(EvenFlightLaw::Even2, lambda, C, T, r, w).unwrap_or(f64::NAN)
        },
        0.0,
        ct,
        4000,
        1e-10,
    )
}

fn u3_radii(lambda: f64, condition: PoissonCondition, samples: usize, seed: u64, shards: usize) -> Result<Vec<f64>> {
    let rows: Vec<Result<f64>> = run_sharded(samples, seed, shards, |rng, count| {
        (0..count)
            .map(|_| simulate_u3(lambda, C, T, condition, rng).map(|t| t.radius()))
            .collect()
    });
    rows.into_iter().collect()
}
