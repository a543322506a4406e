use std::f64::consts::PI;

use super::{check_point, gap, IsotropicDensity, Ctx, Law};
use crate::error::{param, Result};
use crate::specfun::bessel::lambda_nu;
use crate::specfun::{lgamma, reg_inc_beta};

fn check(law: Law, ctx: &Ctx) -> Result<()> {
    law.check_dim(ctx.d)?;
    super::check_motion(ctx.c, ctx.t)
}

fn check_deviating(law: Law, ctx: &Ctx) -> Result<()> {
    check(law, ctx)?;
    if !(ctx.n > 0.0) {
        return param("the absolutely continuous law needs n > 0; n = 0 is the surface law");
    }
    Ok(())
}

/// Law of the projection onto the first `m` coordinates.
///
/// `A = Gamma(s) / (Gamma(s - m/2) pi^{m/2} (ct)^{2s-2})`, `b = s - m/2 - 1`.
/// With `n = 0` and `m < d` this is the projection of the uniform law on the
/// sphere; `m = d` gives the conditional law itself.
pub fn marginal_law(law: Law, ctx: &Ctx, m: usize) -> Result<IsotropicDensity> {
    check(law, ctx)?;
    if m < 1 || m > ctx.d {
        return param(format!("projection dimension must be in 1..={}, got {m}", ctx.d));
    }
    if m == ctx.d && !(ctx.n > 0.0) {
        return param("the full-dimensional law needs n > 0; n = 0 is the surface law");
    }
    let s = law.shape(ctx.d, ctx.n);
    let half_m = 0.5 * m as f64;
    let ct = ctx.reach();
    Ok(IsotropicDensity {
        ln_amplitude: lgamma(s) - lgamma(s - half_m) - half_m * PI.ln() - (2.0 * s - 2.0) * ct.ln(),
        exponent: s - half_m - 1.0,
        radius: ct,
        dim: m,
    })
}

/// Density of the position at time `t` given `n` deviations.
pub fn conditional_law(law: Law, ctx: &Ctx) -> Result<IsotropicDensity> {
    check_deviating(law, ctx)?;
    marginal_law(law, ctx, ctx.d)
}

pub fn conditional_density(law: Law, ctx: &Ctx, x: &[f64]) -> Result<f64> {
    let f = conditional_law(law, ctx)?;
    check_point(x, ctx.d)?;
    Ok(f.at_point(x))
}

pub fn marginal_density(law: Law, ctx: &Ctx, m: usize, x_m: &[f64]) -> Result<f64> {
    let f = marginal_law(law, ctx, m)?;
    check_point(x_m, m)?;
    Ok(f.at_point(x_m))
}

/// Characteristic function at `|alpha| = alpha_norm`:
/// `2^k Gamma(k+1) J_k(ct |alpha|) / (ct |alpha|)^k` with `k = s - 1`.
/// `n = 0` gives the transform of the uniform law on the sphere.
pub fn char_fun(law: Law, ctx: &Ctx, alpha_norm: f64) -> Result<f64> {
    check(law, ctx)?;
    if !(alpha_norm >= 0.0) || !alpha_norm.is_finite() {
        return param(format!("|alpha| must be finite and >= 0, got {alpha_norm}"));
    }
    let order = law.shape(ctx.d, ctx.n) - 1.0;
    Ok(lambda_nu(order, ctx.reach() * alpha_norm))
}

/// Density of the distance from the origin on `(0, ct)`.
pub fn radial_density(law: Law, ctx: &Ctx, r: f64) -> Result<f64> {
    check_deviating(law, ctx)?;
    let ct = ctx.reach();
    if !(r > 0.0 && r < ct) {
        return Ok(0.0);
    }
    let s = law.shape(ctx.d, ctx.n);
    let half_d = 0.5 * ctx.d as f64;
    let ln_value = 2f64.ln() + lgamma(s) - lgamma(half_d) - lgamma(s - half_d)
        + (ctx.d as f64 - 1.0) * r.ln()
        + (s - half_d - 1.0) * gap(ct, r).ln()
        - (2.0 * s - 2.0) * ct.ln();
    Ok(ln_value.exp())
}

/// Distribution function of the distance: `I_{(r/ct)^2}(d/2, s - d/2)`.
pub fn radial_cdf(law: Law, ctx: &Ctx, r: f64) -> Result<f64> {
    check_deviating(law, ctx)?;
    let ct = ctx.reach();
    if r <= 0.0 {
        return Ok(0.0);
    }
    if r >= ct {
        return Ok(1.0);
    }
    let half_d = 0.5 * ctx.d as f64;
    let y = (r / ct) * (r / ct);
    reg_inc_beta(half_d, law.shape(ctx.d, ctx.n) - half_d, y)
}

/// `E |X|^p = Gamma((p+d)/2) Gamma(s) / (Gamma(d/2) Gamma((p+d)/2 + s - d/2)) (ct)^p`.
pub fn radial_moment(law: Law, ctx: &Ctx, p: u32) -> Result<f64> {
    check_deviating(law, ctx)?;
    if p < 1 {
        return param("moment order must be at least 1");
    }
    let s = law.shape(ctx.d, ctx.n);
    let half_d = 0.5 * ctx.d as f64;
    let a = 0.5 * (p as f64 + ctx.d as f64);
    let ln_value = lgamma(a) + lgamma(s) - lgamma(half_d) - lgamma(a + s - half_d)
        + p as f64 * ctx.reach().ln();
    Ok(ln_value.exp())
}

/// Parameter `a` such that the first coordinate is `ct (2B - 1)` with
/// `B ~ Beta(a, a)`.
pub fn line_beta_shape(law: Law, d: usize, n: f64) -> f64 {
    law.shape(d, n) - 0.5
}

fn marginal_exponent(law: Law, d: usize, n: f64, m: usize) -> f64 {
    law.shape(d, n) - 0.5 * m as f64 - 1.0
}

/// The `m`-dimensional projection of the `n`-deviation law is uniform.
pub fn is_uniform(law: Law, d: usize, n: f64, m: usize) -> bool {
    marginal_exponent(law, d, n, m) == 0.0
}

/// The `m`-dimensional projection is unbounded near the sphere.
pub fn is_rim_singular(law: Law, d: usize, n: f64, m: usize) -> bool {
    marginal_exponent(law, d, n, m) < 0.0
}
