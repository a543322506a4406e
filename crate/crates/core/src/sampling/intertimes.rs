use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{domain, param, Result};
use crate::specfun::lgamma;

/// Dirichlet parameterization of the intertimes.
///
/// `A` uses the common parameter `d - 1` and needs `d >= 2`; `B` uses
/// `d/2 - 1` and needs `d >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum StepLaw {
    A,
    B,
}

impl StepLaw {
    /// Common Dirichlet parameter for dimension `d`.
    pub fn shape(self, d: usize) -> f64 {
        match self {
            StepLaw::A => d as f64 - 1.0,
            StepLaw::B => 0.5 * d as f64 - 1.0,
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            StepLaw::A => 2,
            StepLaw::B => 3,
        }
    }

    pub fn check_dim(self, d: usize) -> Result<()> {
        if d < self.min_dim() {
            return param(format!(
                "step law {self:?} needs d >= {}, got {d}",
                self.min_dim()
            ));
        }
        Ok(())
    }
}

/// Durations `tau_1, ..., tau_{n+1}` of the legs of a flight of horizon `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertimes {
    durations: Vec<f64>,
    horizon: f64,
}

impl Intertimes {
    /// Validates positivity and the sum constraint (relative tolerance 1e-12).
    pub fn new(durations: Vec<f64>, horizon: f64) -> Result<Self> {
        check_horizon(horizon)?;
        if durations.is_empty() {
            return domain("intertimes need at least one duration");
        }
        if durations.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return domain("intertimes must be positive and finite");
        }
        let sum: f64 = durations.iter().sum();
        if (sum - horizon).abs() > 1e-12 * horizon {
            return domain(format!("intertimes sum to {sum}, horizon is {horizon}"));
        }
        Ok(Self { durations, horizon })
    }

    pub fn durations(&self) -> &[f64] {
        &self.durations
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of direction changes, one less than the number of legs.
    pub fn deviations(&self) -> usize {
        self.durations.len() - 1
    }

    pub fn into_durations(self) -> Vec<f64> {
        self.durations
    }

    /// Joint density of the first `n` durations under `law`.
    pub fn density(&self, law: StepLaw, d: usize) -> Result<f64> {
        let n = self.deviations();
        intertimes_density(law, d, self.horizon, &self.durations[..n])
    }
}

fn check_horizon(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return param(format!("horizon must be positive and finite, got {t}"));
    }
    Ok(())
}

/// Draws normalized Gamma variates; reused across many samples.
#[derive(Debug, Clone)]
pub(crate) struct DirichletSampler {
    gamma: Gamma<f64>,
}

impl DirichletSampler {
    pub(crate) fn new(law: StepLaw, d: usize) -> Result<Self> {
        law.check_dim(d)?;
        let gamma = Gamma::new(law.shape(d), 1.0)
            .map_err(|e| crate::Error::Parameter(e.to_string()))?;
        Ok(Self { gamma })
    }

    /// Fills `out` with Dirichlet proportions scaled to sum to `t`.
    pub(crate) fn fill<R: Rng + ?Sized>(&self, rng: &mut R, t: f64, out: &mut [f64]) {
        loop {
            let mut sum = 0.0;
            for x in out.iter_mut() {
                *x = self.gamma.sample(rng);
                sum += *x;
            }
            if sum > 0.0 && out.iter().all(|&x| x > 0.0) {
                let scale = t / sum;
                out.iter_mut().for_each(|x| *x *= scale);
                return;
            }
        }
    }
}

/// Samples `n + 1` intertimes with the rescaled Dirichlet law of `law`.
pub fn sample_intertimes<R: Rng + ?Sized>(
    law: StepLaw,
    d: usize,
    n: usize,
    t: f64,
    rng: &mut R,
) -> Result<Intertimes> {
    check_horizon(t)?;
    if n < 1 {
        return param("sample_intertimes needs n >= 1");
    }
    let sampler = DirichletSampler::new(law, d)?;
    let mut durations = vec![0.0; n + 1];
    sampler.fill(rng, t, &mut durations);
    Ok(Intertimes { durations, horizon: t })
}

/// Density of the first `n` intertimes `free = (tau_1, ..., tau_n)`, the last
/// one being `t - sum(free)`:
/// `Gamma((n+1) a) / Gamma(a)^{n+1} * t^{1 - (n+1) a} * prod_j tau_j^{a-1}`
/// with `a` the Dirichlet parameter. Zero outside the open simplex.
pub fn intertimes_density(law: StepLaw, d: usize, t: f64, free: &[f64]) -> Result<f64> {
    law.check_dim(d)?;
    check_horizon(t)?;
    if free.is_empty() {
        return param("intertimes_density needs n >= 1 free durations");
    }
    if free.iter().any(|x| !x.is_finite()) {
        return domain("intertimes must be finite");
    }
    let last = t - free.iter().sum::<f64>();
    if free.iter().any(|&x| x <= 0.0) || last <= 0.0 {
        return Ok(0.0);
    }
    let a = law.shape(d);
    let legs = (free.len() + 1) as f64;
    let ln_tau: f64 = free.iter().map(|x| x.ln()).sum::<f64>() + last.ln();
    let ln_value = lgamma(legs * a) - legs * lgamma(a) + (1.0 - legs * a) * t.ln()
        + (a - 1.0) * ln_tau;
    Ok(ln_value.exp())
}

/// Intertimes built from uniform arrival times: draw `(n+1)(d-1) - 1` sorted
/// uniforms on `[0, t]` and keep every `(d-1)`-th one as a leg boundary.
///
/// For integer `d` this has the law of step law A.
pub fn intertimes_from_arrivals<R: Rng + ?Sized>(
    d: usize,
    n: usize,
    t: f64,
    rng: &mut R,
) -> Result<Intertimes> {
    StepLaw::A.check_dim(d)?;
    check_horizon(t)?;
    if n < 1 {
        return param("intertimes_from_arrivals needs n >= 1");
    }
    let per_leg = d - 1;
    let count = (n + 1) * per_leg - 1;
    let mut arrivals: Vec<f64> = (0..count).map(|_| t * rng.random::<f64>()).collect();
    arrivals.sort_by(f64::total_cmp);
    let mut durations = Vec::with_capacity(n + 1);
    let mut prev = 0.0;
    for j in 1..=n {
        let b = arrivals[j * per_leg - 1];
        durations.push(b - prev);
        prev = b;
    }
    durations.push(t - prev);
    Ok(Intertimes { durations, horizon: t })
}
