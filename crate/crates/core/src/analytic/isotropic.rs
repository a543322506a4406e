use serde::{Deserialize, Serialize};

use super::gap;

/// Density of the form `A (R^2 - |x|^2)^b` on the open ball of radius `R`
/// in `R^dim`, zero on and outside the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropicDensity {
    pub(crate) ln_amplitude: f64,
    pub(crate) exponent: f64,
    pub(crate) radius: f64,
    pub(crate) dim: usize,
}

impl IsotropicDensity {
    pub fn amplitude(&self) -> f64 {
        self.ln_amplitude.exp()
    }

    pub fn ln_amplitude(&self) -> f64 {
        self.ln_amplitude
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value at a point whose gap `R^2 - |x|^2` is `w`.
    pub fn at_gap(&self, w: f64) -> f64 {
        if w <= 0.0 {
            return 0.0;
        }
        (self.ln_amplitude + self.exponent * w.ln()).exp()
    }

    /// Value at distance `r` from the origin.
    pub fn at_radius(&self, r: f64) -> f64 {
        let r = r.abs();
        if r >= self.radius {
            return 0.0;
        }
        self.at_gap(gap(self.radius, r))
    }

    pub fn at_point(&self, x: &[f64]) -> f64 {
        self.at_radius(super::sq_norm(x).sqrt())
    }

    /// Constant inside the ball.
    pub fn is_uniform(&self) -> bool {
        self.exponent == 0.0
    }

    /// Unbounded near the sphere.
    pub fn is_rim_singular(&self) -> bool {
        self.exponent < 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_form() {
        let f = IsotropicDensity { ln_amplitude: 2f64.ln(), exponent: 1.5, radius: 2.0, dim: 3 };
        assert!((f.at_radius(1.0) - 2.0 * 3f64.powf(1.5)).abs() < 1e-13);
        assert!((f.at_point(&[1.0, 0.0, 0.0]) - f.at_radius(1.0)).abs() < 1e-15);
        assert_eq!(f.at_radius(2.0), 0.0);
        assert_eq!(f.at_radius(3.0), 0.0);
        assert!(!f.is_uniform());
        assert!(!f.is_rim_singular());
    }
}
