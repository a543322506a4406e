use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{param, Error, Result};

/// Smallest expected count a pooled bin may have.
pub const MIN_EXPECTED: f64 = 5.0;

/// Outcome of a chi-square goodness-of-fit test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub n_samples: u64,
    pub critical_value_at_alpha: f64,
    pub passed: bool,
}

/// Compares category counts with probabilities `probs`.
///
/// Any mass missing from `probs` is added to the last category. Adjacent
/// categories are pooled until every expected count is at least
/// [`MIN_EXPECTED`].
pub fn chi_square_gof(observed: &[u64], probs: &[f64], alpha: f64) -> Result<ChiSquareResult> {
    if observed.len() != probs.len() {
        return param(format!(
            "{} observed categories but {} probabilities",
            observed.len(),
            probs.len()
        ));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return param(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    if probs.iter().any(|p| !(*p >= 0.0)) {
        return param("probabilities must be non-negative");
    }
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return Err(Error::EmptySample);
    }
    let n = total as f64;
    let missing = (1.0 - probs.iter().sum::<f64>()).max(0.0);

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (i, (&o, &p)) in observed.iter().zip(probs).enumerate() {
        obs += o as f64;
        exp += n * p;
        if i + 1 == probs.len() {
            exp += n * missing;
        }
        if exp >= MIN_EXPECTED {
            bins.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 || obs > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => bins.push((obs, exp)),
        }
    }
    if bins.len() < 2 {
        return param("fewer than two bins after pooling");
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = bins.len() - 1;
    let critical = ChiSquared::new(dof as f64)
        .map_err(|e| Error::Parameter(e.to_string()))?
        .inverse_cdf(1.0 - alpha);
    Ok(ChiSquareResult {
        statistic,
        degrees_of_freedom: dof,
        n_samples: total,
        critical_value_at_alpha: critical,
        passed: statistic < critical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_counts_pass() {
        let r = chi_square_gof(&[25, 25, 50], &[0.25, 0.25, 0.5], 0.001).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.degrees_of_freedom, 2);
        assert!(r.passed);
    }

    #[test]
    fn pools_sparse_tail() {
        // expected 50, 45, 4, 1 -> bins 50, 45, 5
        let r = chi_square_gof(&[50, 45, 4, 1], &[0.5, 0.45, 0.04, 0.01], 0.01).unwrap();
        assert_eq!(r.degrees_of_freedom, 2);
        // critical value of chi^2_2 at 0.01 is -2 ln 0.01
        assert!((r.critical_value_at_alpha + 2.0 * 0.01f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn detects_wrong_law() {
        let r = chi_square_gof(&[900, 100], &[0.5, 0.5], 0.001).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn errors() {
        assert!(chi_square_gof(&[1, 2], &[0.5], 0.01).is_err());
        assert!(matches!(chi_square_gof(&[0, 0], &[0.5, 0.5], 0.01), Err(Error::EmptySample)));
    }
}
