use crate::error::{domain, Result};

/// Regularized incomplete Beta function `I_x(a, b)`.
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !(a.is_finite() && b.is_finite()) {
        return domain(format!("reg_inc_beta requires a, b > 0, got a={a}, b={b}"));
    }
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("reg_inc_beta requires x in [0, 1], got {x}"));
    }
    statrs::function::beta::checked_beta_reg(a, b, x)
        .map(|v| v.clamp(0.0, 1.0))
        .map_err(|e| crate::Error::Domain(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn boundaries_and_closed_forms() {
        assert_eq!(reg_inc_beta(2.5, 0.7, 0.0).unwrap(), 0.0);
        assert_eq!(reg_inc_beta(2.5, 0.7, 1.0).unwrap(), 1.0);
        assert!((reg_inc_beta(1.0, 1.0, 0.3).unwrap() - 0.3).abs() < 1e-15);
        // Beta(2,3) CDF is 6x^2 - 8x^3 + 3x^4
        let x: f64 = 0.5;
        let poly = 6.0 * x * x - 8.0 * x.powi(3) + 3.0 * x.powi(4);
        assert!((poly - 0.6875).abs() < 1e-15);
        assert!((reg_inc_beta(2.0, 3.0, 0.5).unwrap() - 0.6875).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(reg_inc_beta(0.0, 1.0, 0.5).is_err());
        assert!(reg_inc_beta(1.0, 1.0, 1.5).is_err());
        assert!(reg_inc_beta(1.0, -1.0, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn reflection(a in 0.2f64..40.0, b in 0.2f64..40.0, x in 0.0f64..=1.0) {
            let lhs = reg_inc_beta(a, b, x).unwrap() + reg_inc_beta(b, a, 1.0 - x).unwrap();
            prop_assert!((lhs - 1.0).abs() < 1e-12);
        }

        #[test]
        fn monotone(a in 0.2f64..20.0, b in 0.2f64..20.0, x in 0.0f64..1.0, dx in 0.0f64..0.5) {
            let y = (x + dx).min(1.0);
            prop_assert!(reg_inc_beta(a, b, x).unwrap() <= reg_inc_beta(a, b, y).unwrap() + 1e-15);
        }
    }
}
