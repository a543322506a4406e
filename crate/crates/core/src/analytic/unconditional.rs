use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_motion, check_point, sq_norm, Law};
use crate::error::{param, Result};
use crate::sampling::fractional_poisson_pmf;
use crate::specfun::{ln_mittag_leffler, MlfParams};

/// Context of the laws with a randomized number of deviations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncCtx {
    pub d: usize,
    pub lambda: f64,
    pub c: f64,
    pub t: f64,
}

impl UncCtx {
    pub fn new(d: usize, lambda: f64, c: f64, t: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return param(format!("lambda must be positive, got {lambda}"));
        }
        check_motion(c, t)?;
        Ok(Self { d, lambda, c, t })
    }

    pub fn reach(&self) -> f64 {
        self.c * self.t
    }
}

/// Probability of no deviation, i.e. of ending on the sphere:
/// `1 / (Gamma(d/2) E_{nu, d/2}(lambda t))`.
pub fn surface_mass(law: Law, d: usize, lambda: f64, t: f64) -> Result<f64> {
    fractional_poisson_pmf(law.process(), d, lambda, t, 0)
}

struct Parts {
    nu: f64,
    ln_lt: f64,
    ln_ct: f64,
    ln_norm: f64,
    lt: f64,
}

impl Parts {
    fn new(law: Law, ctx: &UncCtx) -> Result<Self> {
        law.check_dim(ctx.d)?;
        let nu = law.nu(ctx.d);
        let lt = ctx.lambda * ctx.t;
        Ok(Self {
            nu,
            ln_lt: lt.ln(),
            ln_ct: ctx.reach().ln(),
            ln_norm: ln_mittag_leffler(MlfParams::new(nu, 0.5 * ctx.d as f64)?, lt)?,
            lt,
        })
    }

    /// `ln E_{nu, beta}(lambda t (w / (ct)^2)^nu)`
    fn ln_series(&self, beta: f64, w: f64) -> Result<f64> {
        let arg = self.lt * (self.nu * (w.ln() - 2.0 * self.ln_ct)).exp();
        ln_mittag_leffler(MlfParams::new(self.nu, beta)?, arg)
    }
}

/// Absolutely continuous part of the law at gap `w = c^2 t^2 - |x|^2`:
/// `lambda t w^{nu-1} / (pi^{d/2} (ct)^{2 nu + d - 2})
///  E_{nu,nu}(lambda t w^nu / (ct)^{2 nu}) / E_{nu,d/2}(lambda t)`.
pub fn unconditional_at_gap(law: Law, ctx: &UncCtx, w: f64) -> Result<f64> {
    let parts = Parts::new(law, ctx)?;
    if w <= 0.0 {
        return Ok(0.0);
    }
    let (nu, d) = (parts.nu, ctx.d as f64);
    let ln_value = parts.ln_lt + (nu - 1.0) * w.ln() - 0.5 * d * PI.ln()
        - (2.0 * nu + d - 2.0) * parts.ln_ct
        + parts.ln_series(nu, w)?
        - parts.ln_norm;
    Ok(ln_value.exp())
}

pub fn unconditional_density(law: Law, ctx: &UncCtx, x: &[f64]) -> Result<f64> {
    check_point(x, ctx.d)?;
    let ct = ctx.reach();
    let r2 = sq_norm(x);
    if r2 >= ct * ct {
        law.check_dim(ctx.d)?;
        return Ok(0.0);
    }
    let r = r2.sqrt();
    unconditional_at_gap(law, ctx, (ct - r) * (ct + r))
}

/// Law of the first `m < d` coordinates, singular part included, at gap `w`:
/// `w^{(d-m)/2-1} / (pi^{m/2} (ct)^{d-2})
///  E_{nu,(d-m)/2}(lambda t w^nu / (ct)^{2 nu}) / E_{nu,d/2}(lambda t)`.
pub fn unconditional_marginal_at_gap(law: Law, ctx: &UncCtx, m: usize, w: f64) -> Result<f64> {
    let parts = Parts::new(law, ctx)?;
    if m < 1 || m >= ctx.d {
        return param(format!("projection dimension must be in 1..{}, got {m}", ctx.d));
    }
    if w <= 0.0 {
        return Ok(0.0);
    }
    let (d, mf) = (ctx.d as f64, m as f64);
    let beta = 0.5 * (d - mf);
    let ln_value = (beta - 1.0) * w.ln() - 0.5 * mf * PI.ln() - (d - 2.0) * parts.ln_ct
        + parts.ln_series(beta, w)?
        - parts.ln_norm;
    Ok(ln_value.exp())
}

pub fn unconditional_marginal(law: Law, ctx: &UncCtx, m: usize, x_m: &[f64]) -> Result<f64> {
    check_point(x_m, m)?;
    let ct = ctx.reach();
    let r = sq_norm(x_m).sqrt();
    let w = if r >= ct { 0.0 } else { (ct - r) * (ct + r) };
    unconditional_marginal_at_gap(law, ctx, m, w)
}
