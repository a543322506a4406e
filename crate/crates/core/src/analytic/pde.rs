use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::verify::GridSpec;

/// Residual statistics of the finite-difference check on one grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    /// Largest absolute residual over the grid.
    pub max_residual: f64,
    /// Largest rounding-error bound of the stencil over the grid; residuals
    /// below it carry no truncation information.
    pub roundoff_floor: f64,
    pub points: usize,
}

/// Largest absolute value over the grid of
/// `q_tt - c^2 Lap q - ((2m - 1 + d)/t) q_t` for `q = (c^2 t^2 - |x|^2)^m`,
/// with second-order central differences. Axis 0 of the grid is time, axes
/// `1..=d` are space.
pub fn telegraph_residual(m_exp: f64, d: usize, c: f64, grid: &GridSpec) -> Result<f64> {
    telegraph_residual_summary(m_exp, d, c, grid).map(|s| s.max_residual)
}

pub fn telegraph_residual_summary(
    m_exp: f64,
    d: usize,
    c: f64,
    grid: &GridSpec,
) -> Result<ResidualSummary> {
    if d < 1 || grid.axes().len() != d + 1 {
        return param(format!(
            "grid needs 1 time axis and {d} space axes, got {} axes",
            grid.axes().len()
        ));
    }
    if !(c > 0.0) || !c.is_finite() || !m_exp.is_finite() {
        return param("speed must be positive and the exponent finite");
    }
    check_inside_cone(c, grid)?;
    let h: Vec<f64> = (0..=d).map(|i| grid.spacing(i)).collect();
    let coef = 2.0 * m_exp - 1.0 + d as f64;
    let q = |t: f64, x: &[f64]| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        (c * c * t * t - r2).powf(m_exp)
    };
    let mut max_residual = 0.0f64;
    let mut roundoff_floor = 0.0f64;
    let mut x = vec![0.0; d];
    grid.for_each_point(|p| {
        let t = p[0];
        x.copy_from_slice(&p[1..]);
        let q0 = q(t, &x);
        let (qp, qm) = (q(t + h[0], &x), q(t - h[0], &x));
        let ht2 = h[0] * h[0];
        let q_tt = (qp - 2.0 * q0 + qm) / ht2;
        let q_t = (qp - qm) / (2.0 * h[0]);
        let mut scale = (qp.abs() + 2.0 * q0.abs() + qm.abs()) / ht2
            + (coef / t).abs() * (qp.abs() + qm.abs()) / (2.0 * h[0]);
        let mut lap = 0.0;
        for i in 0..d {
            let xi = x[i];
            x[i] = xi + h[i + 1];
            let a = q(t, &x);
            x[i] = xi - h[i + 1];
            let b = q(t, &x);
            x[i] = xi;
            let hi2 = h[i + 1] * h[i + 1];
            lap += (a - 2.0 * q0 + b) / hi2;
            scale += c * c * (a.abs() + 2.0 * q0.abs() + b.abs()) / hi2;
        }
        let residual = q_tt - c * c * lap - coef / t * q_t;
        max_residual = max_residual.max(residual.abs());
        roundoff_floor = roundoff_floor.max(32.0 * f64::EPSILON * scale);
    });
    Ok(ResidualSummary { max_residual, roundoff_floor, points: grid.len() })
}

/// The whole stencil, widened by five steps per axis, must lie inside the
/// cone `|x| < c t`.
fn check_inside_cone(c: f64, grid: &GridSpec) -> Result<()> {
    let axes = grid.axes();
    let t_low = axes[0].lower - 5.0 * grid.spacing(0);
    let reach: f64 = (1..axes.len())
        .map(|i| {
            let far = axes[i].lower.abs().max(axes[i].upper.abs()) + 5.0 * grid.spacing(i);
            far * far
        })
        .sum::<f64>()
        .sqrt();
    if !(t_low > 0.0) || c * t_low <= reach {
        return Err(Error::Grid(format!(
            "grid with margin reaches |x| = {reach} but c t >= {}; it must stay inside the cone",
            c * t_low
        )));
    }
    Ok(())
}
