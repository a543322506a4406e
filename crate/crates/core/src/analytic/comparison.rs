use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_motion, gap, sq_norm};
use crate::error::{param, Result};
use crate::specfun::bessel::{i0, l0};
use crate::specfun::lgamma;

/// Reference laws the flight densities are compared with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ComparisonLaw {
    /// Planar flight with Poisson turns, absolutely continuous part:
    /// `lambda e^{-lambda t} e^{(lambda/c) sqrt(w)} / (2 pi c sqrt(w))`.
    StadjePlanar { lambda: f64, c: f64, t: f64 },
    /// Line projection of the planar flight, surface part included:
    /// `e^{-lambda t} / (pi sqrt(w)) + lambda e^{-lambda t} / (2c) (I_0 + L_0)((lambda/c) sqrt(w))`.
    StruveLine { lambda: f64, c: f64, t: f64 },
    /// Law of `m` coordinates of a uniform point in the `k`-ball of radius `ct`.
    Wigner { k: usize, m: usize, c: f64, t: f64 },
}

impl ComparisonLaw {
    pub fn dim(&self) -> usize {
        match self {
            ComparisonLaw::StadjePlanar { .. } => 2,
            ComparisonLaw::StruveLine { .. } => 1,
            ComparisonLaw::Wigner { m, .. } => *m,
        }
    }

    /// Radius `ct` of the support.
    pub fn reach(&self) -> f64 {
        match *self {
            ComparisonLaw::StadjePlanar { c, t, .. }
            | ComparisonLaw::StruveLine { c, t, .. }
            | ComparisonLaw::Wigner { c, t, .. } => c * t,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ComparisonLaw::StadjePlanar { lambda, c, t } | ComparisonLaw::StruveLine { lambda, c, t } => {
                if !(lambda > 0.0) || !lambda.is_finite() {
                    return param(format!("lambda must be positive, got {lambda}"));
                }
                check_motion(c, t)
            }
            ComparisonLaw::Wigner { k, m, c, t } => {
                if m < 1 || m > k {
                    return param(format!("need 1 <= m <= k, got m={m}, k={k}"));
                }
                check_motion(c, t)
            }
        }
    }
}

/// Density of `law` at `point`, zero on and outside the rim.
pub fn comparison_density(law: &ComparisonLaw, point: &[f64]) -> Result<f64> {
    law.validate()?;
    super::check_point(point, law.dim())?;
    let r = sq_norm(point).sqrt();
    let ct = law.reach();
    comparison_density_at(law, if r < ct { gap(ct, r) } else { 0.0 })
}

/// Density at a point whose gap `c^2 t^2 - |x|^2` is `w`.
pub fn comparison_density_at(law: &ComparisonLaw, w: f64) -> Result<f64> {
    law.validate()?;
    if w <= 0.0 {
        return Ok(0.0);
    }
    Ok(match *law {
        ComparisonLaw::StadjePlanar { lambda, c, t } => {
            let z = lambda / c * w.sqrt();
            lambda / (2.0 * PI * c * w.sqrt()) * (z - lambda * t).exp()
        }
        ComparisonLaw::StruveLine { lambda, c, t } => {
            let z = lambda / c * w.sqrt();
            let damp = (-lambda * t).exp();
            damp / (PI * w.sqrt()) + lambda * damp / (2.0 * c) * (i0(z) + l0(z))
        }
        ComparisonLaw::Wigner { k, m, c, t } => {
            let (kf, mf) = (k as f64, m as f64);
            let ln_value = lgamma(0.5 * kf + 1.0)
                - 0.5 * mf * PI.ln()
                - lgamma(0.5 * (kf - mf) + 1.0)
                - kf * (c * t).ln()
                + 0.5 * (kf - mf) * w.ln();
            ln_value.exp()
        }
    })
}

/// `E x^{2j}` for one coordinate of a uniform point in the `k`-ball:
/// `(ct)^{2j} Gamma(j + 1/2) Gamma(k/2 + 1) / (sqrt(pi) Gamma(j + k/2 + 1))`.
pub fn wigner_even_moment(k: usize, j: u32, c: f64, t: f64) -> f64 {
    let (kf, jf) = (k as f64, j as f64);
    let ln_value = 2.0 * jf * (c * t).ln() + lgamma(jf + 0.5) + lgamma(0.5 * kf + 1.0)
        - 0.5 * PI.ln()
        - lgamma(jf + 0.5 * kf + 1.0);
    ln_value.exp()
}

/// Catalan number `C_j = (2j)! / (j! (j+1)!)`.
pub fn catalan(j: u32) -> u64 {
    let mut c: u64 = 1;
    for i in 0..j as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
