//! Closed-form laws of the random flights.
//!
//! Every conditional law of the step-law A and B flights, and every
//! projection of one, has the isotropic form `A (c^2 t^2 - |x|^2)^b` inside
//! the ball of radius `ct`. Both families are indexed by a single shape
//! `s = (n+1) nu + delta` with `nu = (d-1)/2, delta = 1/2` for step law A
//! (`X`) and `nu = d/2 - 1, delta = 1` for step law B (`Y`); the
//! characteristic function is the normalized Bessel function of order `s-1`.

mod comparison;
mod conditional;
mod even;
mod isotropic;
mod pde;
mod unconditional;

pub use comparison::{
    catalan, comparison_density, comparison_density_at, wigner_even_moment, ComparisonLaw,
};
pub use conditional::{
    char_fun, conditional_density, conditional_law, is_rim_singular, is_uniform,
    line_beta_shape, marginal_density, marginal_law, radial_cdf, radial_density, radial_moment,
};
pub use even::{u3_density, u3_density_at, u3_total_mass, EvenFlightLaw};
pub use isotropic::IsotropicDensity;
pub use pde::{telegraph_residual, telegraph_residual_summary, ResidualSummary};
pub use unconditional::{
    surface_mass, unconditional_at_gap, unconditional_density, unconditional_marginal,
    unconditional_marginal_at_gap, UncCtx,
};

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::sampling::{CountingProcess, StepLaw};

/// Which flight: `X` (step law A) or `Y` (step law B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Law {
    X,
    Y,
}

impl Law {
    pub fn step_law(self) -> StepLaw {
        match self {
            Law::X => StepLaw::A,
            Law::Y => StepLaw::B,
        }
    }

    pub fn process(self) -> CountingProcess {
        match self {
            Law::X => CountingProcess::N,
            Law::Y => CountingProcess::M,
        }
    }

    pub fn check_dim(self, d: usize) -> Result<()> {
        self.step_law().check_dim(d)
    }

    /// Mittag-Leffler index of the paired counter.
    pub fn nu(self, d: usize) -> f64 {
        self.process().index(d)
    }

    fn delta(self) -> f64 {
        match self {
            Law::X => 0.5,
            Law::Y => 1.0,
        }
    }

    /// Shape `s = (n+1) nu + delta`; the Bessel order of the
    /// characteristic function is `s - 1`.
    pub fn shape(self, d: usize, n: f64) -> f64 {
        (n + 1.0) * self.nu(d) + self.delta()
    }
}

/// Context of a conditional law: dimension, deviations, speed and horizon.
///
/// `n` is real so that fractional deviation counts can be explored with the
/// density formulas; simulation always uses integer counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ctx {
    pub d: usize,
    pub n: f64,
    pub c: f64,
    pub t: f64,
}

impl Ctx {
    pub fn new(d: usize, n: usize, c: f64, t: f64) -> Result<Self> {
        Self::with_real_n(d, n as f64, c, t)
    }

    pub fn with_real_n(d: usize, n: f64, c: f64, t: f64) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return param(format!("n must be finite and >= 0, got {n}"));
        }
        check_motion(c, t)?;
        Ok(Self { d, n, c, t })
    }

    pub fn reach(&self) -> f64 {
        self.c * self.t
    }
}

pub(crate) fn check_motion(c: f64, t: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return param(format!("speed must be positive, got {c}"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return param(format!("horizon must be positive, got {t}"));
    }
    Ok(())
}

pub(crate) fn check_point(x: &[f64], dim: usize) -> Result<()> {
    if x.len() != dim {
        return param(format!("expected a point in R^{dim}, got {} coordinates", x.len()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return param("point coordinates must be finite");
    }
    Ok(())
}

/// `(R - r)(R + r)`, the gap to the rim without cancellation.
pub(crate) fn gap(radius: f64, r: f64) -> f64 {
    (radius - r) * (radius + r)
}

pub(crate) fn sq_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}
