use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, param, Result};
use crate::specfun::lgamma;

/// Unit vector in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orientation {
    direction: Vec<f64>,
}

impl Orientation {
    /// Normalizes a nonzero vector of length at least 2.
    pub fn from_vector(mut v: Vec<f64>) -> Result<Self> {
        if v.len() < 2 {
            return param(format!("orientation needs d >= 2, got {}", v.len()));
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return domain("orientation vector must be nonzero and finite");
        }
        v.iter_mut().for_each(|x| *x /= norm);
        Ok(Self { direction: v })
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// Hyperspherical angles `(theta_1, ..., theta_{d-2}, phi)` with
    /// `x_1 = cos theta_1`, `x_2 = sin theta_1 cos theta_2`, ...,
    /// `x_{d-1} = sin theta_1 ... sin theta_{d-2} cos phi` and
    /// `x_d = sin theta_1 ... sin theta_{d-2} sin phi`.
    pub fn angles(&self) -> Vec<f64> {
        let x = &self.direction;
        let d = x.len();
        let mut suffix = vec![0.0; d + 1];
        for i in (0..d).rev() {
            suffix[i] = suffix[i + 1] + x[i] * x[i];
        }
        let mut out: Vec<f64> = (0..d - 2).map(|j| suffix[j + 1].sqrt().atan2(x[j])).collect();
        let phi = x[d - 1].atan2(x[d - 2]);
        out.push(if phi < 0.0 { phi + 2.0 * PI } else { phi });
        out
    }
}

/// Writes a uniformly distributed unit vector into `out`.
pub(crate) fn fill_direction<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for x in out.iter_mut() {
            *x = rng.sample(StandardNormal);
            norm2 += *x * *x;
        }
        if norm2 > 0.0 {
            let inv = 1.0 / norm2.sqrt();
            out.iter_mut().for_each(|x| *x *= inv);
            return;
        }
    }
}

/// Direction uniformly distributed on the unit sphere of `R^d`.
pub fn sample_orientation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Orientation> {
    if d < 2 {
        return param(format!("orientation needs d >= 2, got {d}"));
    }
    let mut direction = vec![0.0; d];
    fill_direction(rng, &mut direction);
    Ok(Orientation { direction })
}

/// Joint density of the hyperspherical angles of a uniform direction,
/// `Gamma(d/2) / (2 pi^{d/2}) * prod_j sin^{d-1-j}(theta_j)`.
pub fn orientation_angle_density(d: usize, angles: &[f64]) -> Result<f64> {
    if d < 2 {
        return param(format!("orientation needs d >= 2, got {d}"));
    }
    if angles.len() != d - 1 {
        return param(format!("expected {} angles for d = {d}, got {}", d - 1, angles.len()));
    }
    let (thetas, phi) = angles.split_at(d - 2);
    if !(0.0..=2.0 * PI).contains(&phi[0]) {
        return domain(format!("phi = {} outside [0, 2 pi]", phi[0]));
    }
    let mut value = (lgamma(0.5 * d as f64) - 0.5 * d as f64 * PI.ln()).exp() / 2.0;
    for (j, &theta) in thetas.iter().enumerate() {
        if !(0.0..=PI).contains(&theta) {
            return domain(format!("theta_{} = {theta} outside [0, pi]", j + 1));
        }
        value *= theta.sin().powi((d - 2 - j) as i32);
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RngStream;

    #[test]
    fn unit_norm() {
        let mut rng = RngStream::new(1, 0);
        for d in 2..8 {
            for _ in 0..100 {
                let o = sample_orientation(d, &mut rng).unwrap();
                let n: f64 = o.direction().iter().map(|x| x * x).sum();
                assert!((n.sqrt() - 1.0).abs() < 1e-12);
            }
        }
        assert!(sample_orientation(1, &mut rng).is_err());
    }

    #[test]
    fn angles_round_trip() {
        let mut rng = RngStream::new(2, 0);
        for d in 2..7 {
            for _ in 0..50 {
                let o = sample_orientation(d, &mut rng).unwrap();
                let a = o.angles();
                let mut rebuilt = vec![0.0; d];
                let mut prod = 1.0;
                for j in 0..d - 2 {
                    rebuilt[j] = prod * a[j].cos();
                    prod *= a[j].sin();
                }
                rebuilt[d - 2] = prod * a[d - 2].cos();
                rebuilt[d - 1] = prod * a[d - 2].sin();
                for (u, v) in rebuilt.iter().zip(o.direction()) {
                    assert!((u - v).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn angle_density_values() {
        let planar = orientation_angle_density(2, &[1.0]).unwrap();
        assert!((planar - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let equator = orientation_angle_density(3, &[PI / 2.0, 0.3]).unwrap();
        assert!((equator - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(orientation_angle_density(3, &[0.0, 1.0]).unwrap(), 0.0);
        assert!(orientation_angle_density(3, &[4.0, 1.0]).is_err());
        assert!(orientation_angle_density(3, &[1.0, 7.0]).is_err());
        assert!(orientation_angle_density(3, &[1.0]).is_err());
    }

    #[test]
    fn angle_density_normalizes() {
        use crate::quad::integrate;
        for d in [3usize, 4] {
            // the phi integral contributes 2 pi; the thetas factorize
            let mut total = 2.0 * PI;
            let base = orientation_angle_density(d, &vec![PI / 2.0; d - 1]).unwrap();
            total *= base;
            for j in 0..d - 2 {
                let p = (d - 2 - j) as i32;
                total *= integrate(|th| th.sin().powi(p), 0.0, PI, 1e-14).unwrap();
            }
            assert!((total - 1.0).abs() < 1e-13, "d={d}");
        }
        // full 2-D quadrature for d = 3
        let v = integrate(
            |th| {
                integrate(|ph| orientation_angle_density(3, &[th, ph]).unwrap(), 0.0, 2.0 * PI, 1e-13)
                    .unwrap()
            },
            0.0,
            PI,
            1e-13,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
}
