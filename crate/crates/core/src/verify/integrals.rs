use std::f64::consts::PI;

use crate::error::{param, Result};
use crate::quad::{interval_with_distances_tol, unit_interval_tol};
use crate::specfun::bessel::lambda_nu;
use crate::specfun::lgamma;

/// Surface area of the unit sphere in `R^d`.
pub fn unit_sphere_area(d: usize) -> f64 {
    let h = 0.5 * d as f64;
    2.0 * PI.powf(h) / lgamma(h).exp()
}

/// Integral over the ball of radius `ct` in `R^d` of an isotropic density.
///
/// `density(r, w)` is evaluated at radius `r` with gap `w = (ct)^2 - r^2`
/// supplied rounding-free, so rim singularities integrate cleanly. The
/// radial integral is taken in `y = (r/ct)^2`.
pub fn ball_quadrature<F>(density: F, d: usize, ct: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    weighted_ball(|r, w| density(r, w), d, ct, rel_tol, 0.0)
}

/// Radial Hankel transform of an isotropic density: its characteristic
/// function at `|alpha| = alpha_norm`.
pub fn ball_cf_quadrature<F>(density: F, d: usize, ct: f64, alpha_norm: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let nu = 0.5 * d as f64 - 1.0;
    weighted_ball(
        |r, w| density(r, w) * lambda_nu(nu, alpha_norm * r),
        d,
        ct,
        rel_tol,
        rel_tol,
    )
}

fn weighted_ball<F>(f: F, d: usize, ct: f64, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    if d < 1 {
        return param("dimension must be at least 1");
    }
    if !(ct > 0.0) || !ct.is_finite() {
        return param(format!("radius must be positive, got {ct}"));
    }
    if !(rel_tol >= 1e-12) {
        return param(format!("rel_tol must be at least 1e-12, got {rel_tol}"));
    }
    let half_d = 0.5 * d as f64;
    let ct2 = ct * ct;
    // r^{d-1} dr = (ct)^d y^{d/2-1} dy / 2
    let est = unit_interval_tol(
        |y, ybar| {
            let r = ct * y.sqrt();
            f(r, ct2 * ybar) * y.powf(half_d - 1.0)
        },
        rel_tol,
        abs_tol,
    )?;
    Ok(0.5 * unit_sphere_area(d) * ct.powi(d as i32) * est.value)
}

/// Empirical characteristic function along coordinate `axis`: the mean of
/// `cos(a x_axis)` over the rows of `coords` (row-major, `dim` columns) for
/// each `a` in `alphas`.
///
/// For an isotropic law this estimates the characteristic function at
/// `|alpha| = a`; its standard error is at most `1/sqrt(N)`.
pub fn empirical_cf(coords: &[f64], dim: usize, axis: usize, alphas: &[f64]) -> Result<Vec<f64>> {
    if dim == 0 || axis >= dim || coords.len() % dim != 0 || coords.is_empty() {
        return param("coordinates must be a non-empty row-major table with axis < dim");
    }
    let n = (coords.len() / dim) as f64;
    Ok(alphas
        .iter()
        .map(|&a| {
            if a == 0.0 {
                return 1.0;
            }
            coords.chunks_exact(dim).map(|p| (a * p[axis]).cos()).sum::<f64>() / n
        })
        .collect())
}

/// Tolerance used for an empirical characteristic function from `n` samples.
pub fn empirical_cf_tolerance(n: usize) -> f64 {
    4.0 / (n as f64).sqrt()
}

/// Distribution function tabulated by cumulative quadrature of a density on
/// `[lo, hi]`, normalized to total mass one, linear between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCdf {
    nodes: Vec<f64>,
    cumulative: Vec<f64>,
    total: f64,
}

impl TabulatedCdf {
    /// Tabulates `density(x, x - lo, hi - x)` on `cells` equal cells.
    pub fn new<F>(density: F, lo: f64, hi: f64, cells: usize, rel_tol: f64) -> Result<Self>
    where
        F: Fn(f64, f64, f64) -> f64,
    {
        if !(hi > lo) || cells < 1 {
            return param("tabulation needs lo < hi and at least one cell");
        }
        let h = (hi - lo) / cells as f64;
        let mut nodes = Vec::with_capacity(cells + 1);
        let mut cumulative = Vec::with_capacity(cells + 1);
        nodes.push(lo);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for i in 0..cells {
            let a = lo + i as f64 * h;
            let b = if i + 1 == cells { hi } else { a + h };
            let (da0, db0) = (a - lo, hi - b);
            let cell = interval_with_distances_tol(
                |x, da, db| density(x, da0 + da, db0 + db),
                a,
                b,
                rel_tol,
                1e-16,
            )?;
            acc += cell.value;
            nodes.push(b);
            cumulative.push(acc);
        }
        if !(acc > 0.0) {
            return param("density has no mass on the interval");
        }
        Ok(Self { nodes, cumulative, total: acc })
    }

    /// Mass of the density before normalization.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let lo = self.nodes[0];
        let hi = *self.nodes.last().unwrap();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let i = self.nodes.partition_point(|&v| v <= x).max(1) - 1;
        let (a, b) = (self.nodes[i], self.nodes[i + 1]);
        let (fa, fb) = (self.cumulative[i], self.cumulative[i + 1]);
        let v = fa + (fb - fa) * (x - a) / (b - a);
        (v / self.total).clamp(0.0, 1.0)
    }
}
