use crate::error::{domain, Result};

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ln_gamma requires a finite x > 0, got {x}"));
    }
    Ok(lgamma(x))
}

/// Unchecked variant for arguments already known to be positive.
#[inline]
pub(crate) fn lgamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "lgamma({x})");
    libm::lgamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 50-digit references evaluated at the exact binary value of each input
    const REFERENCE: [(f64, f64); 11] = [
        (0.001, 6.9071788853838536825),
        (0.1, 2.2527126517342059599),
        (0.5, 0.57236494292470008707),
        (0.9999999, 5.772157468444192826318e-8),
        (1.5, -0.12078223763524522235),
        (2.5, 0.28468287047291915963),
        (2.0000001, 4.227843666532497923203e-8),
        (3.7, 1.4280723266653879219),
        (10.5, 13.940625219403763633),
        (100.3, 360.51470572905813124),
        (9999.5, 82095.112363757639228),
    ];

    #[test]
    fn matches_reference_values() {
        for (x, want) in REFERENCE {
            let got = ln_gamma(x).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-13,
                "ln_gamma({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn exact_points() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        let half = 0.5 * std::f64::consts::PI.ln();
        assert!((ln_gamma(0.5).unwrap() - half).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }
}
