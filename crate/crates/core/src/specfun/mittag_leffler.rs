use super::gamma::lgamma;
use crate::error::{domain, Error, Result};

/// Maximum number of series terms before giving up.
pub const TERM_BUDGET: usize = 10_000;

/// Indices `(nu, beta)` of the two-parameter Mittag-Leffler function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlfParams {
    nu: f64,
    beta: f64,
}

impl MlfParams {
    pub fn new(nu: f64, beta: f64) -> Result<Self> {
        if !(nu > 0.0 && beta > 0.0) || !(nu.is_finite() && beta.is_finite()) {
            return domain(format!(
                "Mittag-Leffler indices must be positive, got nu={nu}, beta={beta}"
            ));
        }
        Ok(Self { nu, beta })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// `E_{nu,beta}(x) = sum_k x^k / Gamma(nu k + beta)`.
///
/// Terms are handled as logarithms with a running rescale, so the result
/// only overflows when the value itself does. For large negative `x` the
/// alternating series loses relative accuracy.
pub fn mittag_leffler(p: MlfParams, x: f64) -> Result<f64> {
    let (shift, sum) = scaled_series(p, x)?;
    Ok(sum * shift.exp())
}

/// `ln E_{nu,beta}(x)` for `x >= 0`, finite even where the value overflows.
pub fn ln_mittag_leffler(p: MlfParams, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return domain(format!("ln_mittag_leffler requires x >= 0, got {x}"));
    }
    let (shift, sum) = scaled_series(p, x)?;
    Ok(shift + sum.ln())
}

/// Returns `(shift, s)` with `E = s * exp(shift)`.
fn scaled_series(p: MlfParams, x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return domain(format!("Mittag-Leffler argument must be finite, got {x}"));
    }
    let mut shift = -lgamma(p.beta);
    let mut sum = 1.0;
    if x == 0.0 {
        return Ok((shift, sum));
    }
    let ln_x = x.abs().ln();
    let mut small = 0;
    for k in 1..TERM_BUDGET {
        let kf = k as f64;
        let ln_term = kf * ln_x - lgamma(p.nu * kf + p.beta);
        if ln_term > shift {
            sum *= (shift - ln_term).exp();
            shift = ln_term;
        }
        let mut term = (ln_term - shift).exp();
        if x < 0.0 && k % 2 == 1 {
            term = -term;
        }
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            small += 1;
            if small == 3 {
                return Ok((shift, sum));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence(format!(
        "E_{{{},{}}}({x}) needs more than {TERM_BUDGET} terms",
        p.nu, p.beta
    )))
}
