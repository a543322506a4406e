//! Tanh-sinh (double exponential) quadrature on finite intervals.
//!
//! Nodes are generated together with their distances to both endpoints, so
//! integrands with algebraic or logarithmic endpoint singularities can be
//! evaluated without the cancellation in `b - x` near the upper end.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const T_MAX: f64 = 6.0;
const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 12;

/// Integration result with the difference between the last two levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Integrates `f(y, 1 - y)` over `[0, 1]`.
///
/// The second argument is the complement `1 - y` computed without rounding
/// loss, which matters for integrands singular at `y = 1`.
pub fn unit_interval<F>(f: F, rel_tol: f64) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64,
{
    unit_interval_tol(f, rel_tol, 0.0)
}

/// As [`unit_interval`], also accepting an absolute error below `abs_tol`.
pub fn unit_interval_tol<F>(f: F, rel_tol: f64, abs_tol: f64) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64,
{
    let mut evaluations = 0usize;
    let mut eval = |y: f64, ybar: f64| -> Result<f64> {
        evaluations += 1;
        let v = f(y, ybar);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Quadrature(format!("integrand is {v} at y = {y:e}")))
        }
    };

    // level 0: nodes at integer t
    let mut sum = FRAC_PI_2 * 0.5 * eval(0.5, 0.5)?;
    let mut k = 1.0;
    while k <= T_MAX {
        sum += node_pair(k, &mut eval)?;
        k += 1.0;
    }
    let mut h = 1.0;
    let mut prev = h * sum;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut t = h;
        while t <= T_MAX {
            sum += node_pair(t, &mut eval)?;
            t += 2.0 * h;
        }
        let value = h * sum;
        let error = (value - prev).abs();
        if level >= MIN_LEVEL && (error <= rel_tol * value.abs() || error <= abs_tol.max(1e-300)) {
            return Ok(Estimate { value, error, evaluations });
        }
        prev = value;
    }
    Err(Error::Quadrature(format!(
        "no convergence to rel_tol {rel_tol:e} after {MAX_LEVEL} levels (estimate {prev:e})"
    )))
}

/// Weighted contribution of the two mirrored nodes at `+t` and `-t`.
fn node_pair<E>(t: f64, eval: &mut E) -> Result<f64>
where
    E: FnMut(f64, f64) -> Result<f64>,
{
    let s = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * s).exp();
    let near_one = 1.0 / (1.0 + e);
    let near_zero = e / (1.0 + e);
    let weight = FRAC_PI_2 * t.cosh() * 2.0 * e / ((1.0 + e) * (1.0 + e));
    if weight == 0.0 || near_zero == 0.0 {
        return Ok(0.0);
    }
    Ok(weight * (eval(near_one, near_zero)? + eval(near_zero, near_one)?))
}

/// Integrates `f(x, x - a, b - x)` over `[a, b]`.
pub fn interval_with_distances<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Estimate>
where
    F: Fn(f64, f64, f64) -> f64,
{
    interval_with_distances_tol(f, a, b, rel_tol, 0.0)
}

/// As [`interval_with_distances`] with an absolute tolerance as well.
pub fn interval_with_distances_tol<F>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Estimate>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let len = b - a;
    let mut est = unit_interval_tol(
        |y, ybar| {
            let (da, db) = (len * y, len * ybar);
            let x = if y <= 0.5 { a + da } else { b - db };
            f(x, da, db)
        },
        rel_tol,
        abs_tol / len,
    )?;
    est.value *= len;
    est.error *= len;
    Ok(est)
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    interval_with_distances(|x, _, _| f(x), a, b, rel_tol).map(|e| e.value)
}

/// Integrates `f` over `[a, b]` to a relative or absolute tolerance.
pub fn integrate_tol<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    interval_with_distances_tol(|x, _, _| f(x), a, b, rel_tol, abs_tol).map(|e| e.value)
}
