use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_motion, gap, sq_norm};
use crate::error::{param, Result};
use crate::specfun::bessel::{i0, i1_over_half_x};

/// Laws of the flight in `R^3` that turns only at even-indexed Poisson events.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvenFlightLaw {
    /// Position given exactly two Poisson events (one turn), in `R^3`.
    Even2,
    /// Absolutely continuous part of the position over odd event counts, in `R^3`.
    OddUnconditional,
    /// Planar projection over odd event counts, in `R^2`.
    PlanarOdd,
    /// Line projection over odd event counts, in `R`.
    LineOdd,
}

impl EvenFlightLaw {
    pub fn dim(self) -> usize {
        match self {
            EvenFlightLaw::Even2 | EvenFlightLaw::OddUnconditional => 3,
            EvenFlightLaw::PlanarOdd => 2,
            EvenFlightLaw::LineOdd => 1,
        }
    }
}

/// Total mass carried by the density.
///
/// `Even2` is a probability law. The odd laws carry
/// `P(N(t) odd) = e^{-lambda t} sinh(lambda t)`, minus the single-event surface
/// mass `lambda t e^{-lambda t}` for the three-dimensional one.
pub fn u3_total_mass(kind: EvenFlightLaw, lambda: f64, t: f64) -> f64 {
    let x = lambda * t;
    let odd = -0.5 * (-2.0 * x).exp_m1();
    match kind {
        EvenFlightLaw::Even2 => 1.0,
        EvenFlightLaw::OddUnconditional => odd - x * (-x).exp(),
        EvenFlightLaw::PlanarOdd | EvenFlightLaw::LineOdd => odd,
    }
}

/// Density at distance `r` from the origin with gap `w = c^2 t^2 - r^2`.
pub fn u3_density_at(kind: EvenFlightLaw, lambda: f64, c: f64, t: f64, r: f64, w: f64) -> Result<f64> {
    check_motion(c, t)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return param(format!("lambda must be positive, got {lambda}"));
    }
    if w <= 0.0 {
        return Ok(0.0);
    }
    let ct = c * t;
    let damp = (-lambda * t).exp();
    let z = lambda / c * w.sqrt();
    Ok(match kind {
        EvenFlightLaw::Even2 => {
            // ln((ct + r)/(ct - r)) / (4 pi (ct)^2 r), finite at the origin
            let ratio = if r < 0.5 * ct {
                if r == 0.0 {
                    return Ok(1.0 / (2.0 * PI * ct.powi(3)));
                }
                (2.0 * r / (ct - r)).ln_1p()
            } else {
                2.0 * (ct + r).ln() - w.ln()
            };
            ratio / (4.0 * PI * ct * ct * r)
        }
        EvenFlightLaw::OddUnconditional => {
            // e^{-lambda t}/pi (lambda/2c)^2 I_1(z)/sqrt(w)
            let k = lambda / (2.0 * c);
            damp / PI * k * k * k * i1_over_half_x(z)
        }
        EvenFlightLaw::PlanarOdd => lambda * damp / (2.0 * PI * c * w.sqrt()) * z.cosh(),
        EvenFlightLaw::LineOdd => damp * lambda / (2.0 * c) * i0(z),
    })
}

/// Density of the chosen law at `point`, zero on and outside the rim.
pub fn u3_density(kind: EvenFlightLaw, lambda: f64, c: f64, t: f64, point: &[f64]) -> Result<f64> {
    super::check_point(point, kind.dim())?;
    let r = sq_norm(point).sqrt();
    let ct = c * t;
    let w = if r >= ct { 0.0 } else { gap(ct, r) };
    u3_density_at(kind, lambda, c, t, r, w)
}
