use rand::Rng;

use crate::error::{param, Error, Result};
use crate::specfun::{lgamma, ln_mittag_leffler, MlfParams};

/// Probability mass left out when a pmf table is truncated.
pub const PMF_TAIL: f64 = 1e-12;
/// Largest number of terms a pmf table may hold.
pub const PMF_MAX_TERMS: usize = 100_000;

/// Fractional Poisson counters randomizing the number of deviations.
///
/// `N` pairs with step law A (`d >= 2`), `M` with step law B (`d >= 3`).
/// Both have pmf `(lambda t)^n / Gamma(nu n + d/2) / E_{nu, d/2}(lambda t)`
/// with `nu = (d-1)/2` for `N` and `nu = d/2 - 1` for `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CountingProcess {
    N,
    M,
}

impl CountingProcess {
    /// First Mittag-Leffler index `nu` for dimension `d`.
    pub fn index(self, d: usize) -> f64 {
        match self {
            CountingProcess::N => 0.5 * (d as f64 - 1.0),
            CountingProcess::M => 0.5 * d as f64 - 1.0,
        }
    }

    pub fn check_dim(self, d: usize) -> Result<()> {
        let min = match self {
            CountingProcess::N => 2,
            CountingProcess::M => 3,
        };
        if d < min {
            return param(format!("process {self:?} needs d >= {min}, got {d}"));
        }
        Ok(())
    }
}

struct PmfParts {
    nu: f64,
    beta: f64,
    ln_rate: f64,
    ln_norm: f64,
}

impl PmfParts {
    fn new(process: CountingProcess, d: usize, lambda: f64, t: f64) -> Result<Self> {
        process.check_dim(d)?;
        if !(lambda > 0.0) || !lambda.is_finite() {
            return param(format!("lambda must be positive, got {lambda}"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return param(format!("horizon must be positive, got {t}"));
        }
        let nu = process.index(d);
        let beta = 0.5 * d as f64;
        let x = lambda * t;
        Ok(Self {
            nu,
            beta,
            ln_rate: x.ln(),
            ln_norm: ln_mittag_leffler(MlfParams::new(nu, beta)?, x)?,
        })
    }

    fn ln_pmf(&self, n: usize) -> f64 {
        let nf = n as f64;
        nf * self.ln_rate - lgamma(self.nu * nf + self.beta) - self.ln_norm
    }
}

/// Probability that the counter equals `n` at time `t`.
pub fn fractional_poisson_pmf(
    process: CountingProcess,
    d: usize,
    lambda: f64,
    t: f64,
    n: usize,
) -> Result<f64> {
    Ok(PmfParts::new(process, d, lambda, t)?.ln_pmf(n).exp())
}

/// Closed-form mean
/// `(x/nu) [E_{nu,nu+beta-1}(x) + (1-beta) E_{nu,nu+beta}(x)] / E_{nu,beta}(x)`
/// with `x = lambda t` and `beta = d/2`.
pub fn fractional_poisson_mean(
    process: CountingProcess,
    d: usize,
    lambda: f64,
    t: f64,
) -> Result<f64> {
    let parts = PmfParts::new(process, d, lambda, t)?;
    let (nu, beta) = (parts.nu, parts.beta);
    let x = lambda * t;
    let e1 = ln_mittag_leffler(MlfParams::new(nu, nu + beta - 1.0)?, x)?;
    let e2 = ln_mittag_leffler(MlfParams::new(nu, nu + beta)?, x)?;
    let ratio = (e1 - parts.ln_norm).exp() + (1.0 - beta) * (e2 - parts.ln_norm).exp();
    Ok(x / nu * ratio)
}

/// Truncated pmf table for inverse-CDF sampling.
#[derive(Debug, Clone)]
pub struct PmfTable {
    process: CountingProcess,
    d: usize,
    lambda: f64,
    t: f64,
    probabilities: Vec<f64>,
    cumulative: Vec<f64>,
}

impl PmfTable {
    /// Tabulates the pmf until the captured mass exceeds `1 - PMF_TAIL`.
    pub fn build(process: CountingProcess, d: usize, lambda: f64, t: f64) -> Result<Self> {
        let parts = PmfParts::new(process, d, lambda, t)?;
        let mut probabilities = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = 0.0;
        for n in 0..PMF_MAX_TERMS {
            let p = parts.ln_pmf(n).exp();
            total += p;
            probabilities.push(p);
            cumulative.push(total);
            if total >= 1.0 - PMF_TAIL {
                return Ok(Self { process, d, lambda, t, probabilities, cumulative });
            }
        }
        Err(Error::Truncation(format!(
            "mass {total} after {PMF_MAX_TERMS} terms (process {process:?}, d={d}, lambda t={})",
            lambda * t
        )))
    }

    pub fn process(&self) -> CountingProcess {
        self.process
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn horizon(&self) -> f64 {
        self.t
    }

    /// Tabulated probabilities for `n = 0, 1, ...`.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Tabulated pmf, zero beyond the truncation point.
    pub fn pmf(&self, n: usize) -> f64 {
        self.probabilities.get(n).copied().unwrap_or(0.0)
    }

    /// Mass captured by the table.
    pub fn captured_mass(&self) -> f64 {
        *self.cumulative.last().expect("table is never empty")
    }

    /// Inverse-CDF draw from the table renormalized to its captured mass.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u = rng.random::<f64>() * self.captured_mass();
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

/// Single draw of the counter. Build a [`PmfTable`] for repeated draws.
pub fn sample_fractional_poisson<R: Rng + ?Sized>(
    process: CountingProcess,
    d: usize,
    lambda: f64,
    t: f64,
    rng: &mut R,
) -> Result<usize> {
    Ok(PmfTable::build(process, d, lambda, t)?.sample(rng))
}

/// Conditioning on the homogeneous Poisson count `N(t)` of the even-event flight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PoissonCondition {
    /// `N(t)` equals the given count.
    Events(usize),
    /// `N(t)` drawn from the Poisson law restricted to odd values.
    RandomOdd,
}

/// Switching instants of the even-event flight: the even-indexed arrival
/// times `t_2 < t_4 < ...` among `N(t)` Poisson arrivals on `[0, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenSwitches {
    pub events: usize,
    pub switch_times: Vec<f64>,
}

impl EvenSwitches {
    /// Leg durations delimited by the switch times.
    pub fn durations(&self, t: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.switch_times.len() + 1);
        let mut prev = 0.0;
        for &s in &self.switch_times {
            out.push(s - prev);
            prev = s;
        }
        out.push(t - prev);
        out
    }
}

/// Samples the switch instants of the even-event flight.
///
/// Given `N(t) = k`, arrival times are sorted uniforms on `[0, t]`.
pub fn sample_even_poisson_switches<R: Rng + ?Sized>(
    lambda: f64,
    t: f64,
    condition: PoissonCondition,
    rng: &mut R,
) -> Result<EvenSwitches> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return param(format!("lambda must be positive, got {lambda}"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return param(format!("horizon must be positive, got {t}"));
    }
    let events = match condition {
        PoissonCondition::Events(k) => k,
        PoissonCondition::RandomOdd => sample_odd_poisson(lambda * t, rng),
    };
    let mut arrivals: Vec<f64> = (0..events).map(|_| t * rng.random::<f64>()).collect();
    arrivals.sort_by(f64::total_cmp);
    let switch_times = arrivals.iter().skip(1).step_by(2).copied().collect();
    Ok(EvenSwitches { events, switch_times })
}

/// Poisson(`x`) conditioned on being odd, by inverse CDF.
fn sample_odd_poisson<R: Rng + ?Sized>(x: f64, rng: &mut R) -> usize {
    // P(N = 2k+1 | odd) = x^{2k+1} / (2k+1)! / sinh(x)
    let ln_sinh = x + (-(-2.0 * x).exp_m1() / 2.0).ln();
    let ln_x = x.ln();
    let u = rng.random::<f64>();
    let mut acc = 0.0;
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        acc += (kf * ln_x - lgamma(kf + 1.0) - ln_sinh).exp();
        if acc > u || k > 2 * PMF_MAX_TERMS {
            return k;
        }
        k += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RngStream;
    use crate::specfun::mittag_leffler;

    #[test]
    fn pmf_normalizes() {
        for d in 2..=5 {
            for x in [0.5, 1.0, 5.0, 20.0] {
                let mut processes = vec![CountingProcess::N];
                if d >= 3 {
                    processes.push(CountingProcess::M);
                }
                for p in processes {
                    let s: f64 = (0..3000).map(|n| fractional_poisson_pmf(p, d, x, 1.0, n).unwrap()).sum();
                    assert!((s - 1.0).abs() < 1e-10, "{p:?} d={d} x={x}: {s}");
                }
            }
        }
    }

    #[test]
    fn pmf_closed_forms() {
        let e = |nu, beta, x| mittag_leffler(MlfParams::new(nu, beta).unwrap(), x).unwrap();
        // N_3 at n = 0 is 1 / (Gamma(3/2) E_{1,3/2}(1))
        let want = 1.0 / (lgamma(1.5).exp() * e(1.0, 1.5, 1.0));
        let got = fractional_poisson_pmf(CountingProcess::N, 3, 1.0, 1.0, 0).unwrap();
        assert!(((got - want) / want).abs() < 1e-14);
        // M_4 has pmf (x^n / (n+1)!) / ((e^x - 1)/x)
        let z = (1f64).exp_m1();
        let mut fact = 1.0;
        for n in 0..10usize {
            fact *= (n + 1) as f64;
            let got = fractional_poisson_pmf(CountingProcess::M, 4, 1.0, 1.0, n).unwrap();
            assert!(((got - 1.0 / fact / z) / got).abs() < 1e-13, "n={n}");
        }
        // N_2 is not the classical Poisson law; N_3 with d = 3 has nu = 1
        let p = fractional_poisson_pmf(CountingProcess::N, 2, 1.0, 1.0, 0).unwrap();
        assert!(p > 0.0 && p < 1.0);
    }

    #[test]
    fn mean_closed_forms() {
        let e = |nu, beta, x| mittag_leffler(MlfParams::new(nu, beta).unwrap(), x).unwrap();
        let mean3 = 1.0 - 0.5 * e(1.0, 2.5, 1.0) / e(1.0, 1.5, 1.0);
        let got = fractional_poisson_mean(CountingProcess::N, 3, 1.0, 1.0).unwrap();
        assert!((got - mean3).abs() < 1e-14);
        let mean4 = 1.0 - e(1.0, 3.0, 1.0) / e(1.0, 2.0, 1.0);
        let got = fractional_poisson_mean(CountingProcess::M, 4, 1.0, 1.0).unwrap();
        assert!((got - mean4).abs() < 1e-14);
        for d in 2..=5 {
            for x in [0.5, 1.0, 5.0, 20.0] {
                let table = PmfTable::build(CountingProcess::N, d, x, 1.0).unwrap();
                let sum: f64 = table.probabilities().iter().enumerate().map(|(n, p)| n as f64 * p).sum();
                let mean = fractional_poisson_mean(CountingProcess::N, d, x, 1.0).unwrap();
                assert!((sum - mean).abs() < 1e-8 * mean.max(1.0), "d={d} x={x}");
            }
        }
    }

    #[test]
    fn table_truncation() {
        let t = PmfTable::build(CountingProcess::N, 3, 2.0, 1.0).unwrap();
        assert!(t.captured_mass() >= 1.0 - PMF_TAIL);
        assert_eq!(t.pmf(100_000), 0.0);
        assert!(PmfTable::build(CountingProcess::M, 2, 1.0, 1.0).is_err());
        assert!(PmfTable::build(CountingProcess::N, 3, -1.0, 1.0).is_err());
    }

    #[test]
    fn tiny_rate_gives_zero() {
        let table = PmfTable::build(CountingProcess::N, 3, 1e-8, 1.0).unwrap();
        let mut rng = RngStream::new(3, 0);
        assert!((0..10_000).all(|_| table.sample(&mut rng) == 0));
    }

    #[test]
    fn even_switches() {
        let mut rng = RngStream::new(9, 0);
        let one = sample_even_poisson_switches(1.0, 2.0, PoissonCondition::Events(1), &mut rng).unwrap();
        assert!(one.switch_times.is_empty());
        let five = sample_even_poisson_switches(1.0, 2.0, PoissonCondition::Events(5), &mut rng).unwrap();
        assert_eq!(five.switch_times.len(), 2);
        let durations = five.durations(2.0);
        assert!((durations.iter().sum::<f64>() - 2.0).abs() < 1e-15);
        for _ in 0..1000 {
            let s = sample_even_poisson_switches(0.7, 1.0, PoissonCondition::RandomOdd, &mut rng).unwrap();
            assert_eq!(s.events % 2, 1);
        }
    }
}
