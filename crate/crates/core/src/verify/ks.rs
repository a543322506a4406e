use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Outcome of a Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n_samples: usize,
    pub critical_value_at_alpha: f64,
    pub passed: bool,
}

impl KsResult {
    fn new(statistic: f64, n_samples: usize, critical: f64) -> Self {
        Self {
            statistic,
            n_samples,
            critical_value_at_alpha: critical,
            passed: statistic < critical,
        }
    }
}

/// Survival function of the Kolmogorov distribution,
/// `2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2)`.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 0.3 {
        // theta-function form, accurate where the alternating series is slow
        let s: f64 = (1..=20)
            .map(|k| {
                let a = (2 * k - 1) as f64 * std::f64::consts::PI / x;
                (-a * a / 8.0).exp()
            })
            .sum();
        return 1.0 - (2.0 * std::f64::consts::PI).sqrt() / x * s;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-18 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Point `x` where the Kolmogorov survival function equals `alpha`.
pub fn kolmogorov_quantile(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (mut lo, mut hi) = (1e-3, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_survival(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return param(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    Ok(())
}

fn sorted_copy(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if samples.iter().any(|v| v.is_nan()) {
        return param("samples contain NaN");
    }
    let mut v = samples.to_vec();
    if !v.is_sorted() {
        v.sort_by(f64::total_cmp);
    }
    Ok(v)
}

/// One-sample test of `samples` against the distribution function `cdf`.
pub fn ks_one_sample<F>(samples: &[f64], cdf: F, alpha: f64) -> Result<KsResult>
where
    F: Fn(f64) -> f64,
{
    let v = sorted_copy(samples)?;
    let n = v.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x);
        if !(0.0..=1.0).contains(&f) {
            return param(format!("cdf returned {f} at {x}, outside [0, 1]"));
        }
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    let critical = kolmogorov_quantile(alpha)? / n.sqrt();
    Ok(KsResult::new(d, v.len(), critical))
}

/// Two-sample test; `n_samples` in the result is the combined size.
pub fn ks_two_sample(a: &[f64], b: &[f64], alpha: f64) -> Result<KsResult> {
    let a = sorted_copy(a)?;
    let b = sorted_copy(b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let critical = kolmogorov_quantile(alpha)? * ((na + nb) / (na * nb)).sqrt();
    Ok(KsResult::new(d, a.len() + b.len(), critical))
}
