use std::f64::consts::PI;

use super::gamma::lgamma;
use crate::error::{domain, Result};

/// Below this argument the ascending series is used for every order.
const SERIES_LIMIT: f64 = 15.0;

/// Order of a Bessel function of the first kind, `nu >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return domain(format!("Bessel order must be finite and >= 0, got {nu}"));
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Bessel function of the first kind `J_nu(x)` for `x >= 0`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("bessel_j requires a finite x >= 0, got {x}"));
    }
    Ok(jnu(order.0, x))
}

/// `Gamma(nu+1) (2/z)^nu J_nu(z)`, equal to 1 at `z = 0`.
///
/// This is the isotropic characteristic function of the flight laws.
pub fn bessel_lambda(order: BesselOrder, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("bessel_lambda requires a finite z >= 0, got {z}"));
    }
    Ok(lambda_nu(order.0, z))
}

pub(crate) fn lambda_nu(nu: f64, z: f64) -> f64 {
    if z < SERIES_LIMIT || z <= nu {
        return reduced_series(nu, z);
    }
    (lgamma(nu + 1.0) + nu * (2.0 / z).ln()).exp() * jnu(nu, z)
}

pub(crate) fn jnu(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT || x <= nu {
        let lead = nu * (0.5 * x).ln() - lgamma(nu + 1.0);
        return lead.exp() * reduced_series(nu, x);
    }
    // Hankel expansion for the two lowest orders, then upward recurrence.
    // Every order in the recurrence stays below x, where it is stable.
    let base = nu.floor();
    let mu = nu - base;
    let steps = base as usize;
    let mut lo = hankel(mu, x);
    if steps == 0 {
        return lo;
    }
    let mut hi = hankel(mu + 1.0, x);
    for k in 1..steps {
        let next = 2.0 * (mu + k as f64) / x * hi - lo;
        lo = hi;
        hi = next;
    }
    hi
}

/// Sum over k of (-z^2/4)^k / (k! (nu+1)_k).
fn reduced_series(nu: f64, z: f64) -> f64 {
    let q = -0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..1000 {
        let kf = k as f64;
        let denom = kf * (nu + kf);
        term *= q / denom;
        sum += term;
        if denom > -q && term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn hankel(mu: f64, x: f64) -> f64 {
    let m4 = 4.0 * mu * mu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (m4 - odd * odd) / (8.0 * kf * x);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * mu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Modified Bessel function `I_0` or `I_1` of a non-negative argument.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    if order > 1 {
        return domain(format!("bessel_i supports orders 0 and 1, got {order}"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("bessel_i requires a finite x >= 0, got {x}"));
    }
    Ok(match order {
        0 => i0(x),
        _ => 0.5 * x * i1_over_half_x(x),
    })
}

pub(crate) fn i0(x: f64) -> f64 {
    positive_series(0.25 * x * x, |k| k * k, 1.0)
}

/// `I_1(x) / (x/2)`, finite at the origin.
pub(crate) fn i1_over_half_x(x: f64) -> f64 {
    positive_series(0.25 * x * x, |k| k * (k + 1.0), 1.0)
}

/// Modified Struve function `L_0(x)` from its defining series.
pub fn struve_l0(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("struve_l0 requires a finite x >= 0, got {x}"));
    }
    Ok(l0(x))
}

pub(crate) fn l0(x: f64) -> f64 {
    // first term (x/2) / Gamma(3/2)^2
    let first = 0.5 * x * 4.0 / PI;
    positive_series(0.25 * x * x, |k| (k + 0.5) * (k + 0.5), first)
}

/// Sum of a series with positive terms, `t_k = t_{k-1} * q / denom(k)`.
fn positive_series(q: f64, denom: impl Fn(f64) -> f64, first: f64) -> f64 {
    let mut term = first;
    let mut sum = first;
    for k in 1..2000 {
        let d = denom(k as f64);
        term *= q / d;
        sum += term;
        if d > q && term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(BesselOrder::new(nu).unwrap(), x).unwrap()
    }

    // 50-digit reference values: (nu, x, J_nu(x))
    const J_REFERENCE: [(f64, f64, f64); 56] = [
        (0.0, 0.1, 0.99750156206604003228),
        (0.0, 1.0, 0.76519768655796655145),
        (0.0, 5.0, -0.17759677131433830435),
        (0.0, 14.9, 0.0063915448908529803273),
        (0.0, 15.0, -0.014224472826780773234),
        (0.0, 20.0, 0.16702466434058315473),
        (0.0, 35.0, -0.12684568275631256981),
        (0.0, 50.0, 0.055812327669251815005),
        (0.5, 0.1, 0.25189294032600094573),
        (0.5, 1.0, 0.67139670714180309042),
        (0.5, 5.0, -0.34216798479816180976),
        (0.5, 14.9, 0.14942179431555052359),
        (0.5, 15.0, 0.13396768882243934618),
        (0.5, 20.0, 0.16288076385502987091),
        (0.5, 35.0, -0.05774775758945884623),
        (0.5, 50.0, -0.029605831888924612568),
        (1.0, 0.1, 0.049937526036241997556),
        (1.0, 1.0, 0.44005058574493351596),
        (1.0, 5.0, -0.32757913759146522204),
        (1.0, 14.9, 0.20687617180992505595),
        (1.0, 15.0, 0.20510403861352276115),
        (1.0, 20.0, 0.066833124175850045579),
        (1.0, 35.0, 0.04399094217962563997),
        (1.0, 50.0, -0.097511828125175137661),
        (2.5, 0.1, 0.00016808871900334127033),
        (2.5, 1.0, 0.049496810228477942271),
        (2.5, 5.0, 0.24037720111131735285),
        (2.5, 14.9, -0.11864574475124894916),
        (2.5, 15.0, -0.10088034979001177408),
        (2.5, 20.0, -0.17258019384387642416),
        (2.5, 35.0, 0.068053050451804672518),
        (2.5, 50.0, 0.023037219509625530445),
        (7.5, 0.1, 1.2443805684963254977e-14),
        (7.5, 1.0, 3.821974121348042196e-7),
        (7.5, 5.0, 0.031940778293484687016),
        (7.5, 14.9, -0.099158084229372531674),
        (7.5, 15.0, -0.081212945103300846419),
        (7.5, 20.0, -0.15532194872765224203),
        (7.5, 35.0, -0.043644356245964849893),
        (7.5, 50.0, 0.10856137065342746007),
        (15.5, 0.1, 1.3146254522446777257e-33),
        (15.5, 1.0, 4.0952910069598113605e-18),
        (15.5, 5.0, 1.9344904213834869372e-7),
        (15.5, 14.9, 0.14108573993576428286),
        (15.5, 15.0, 0.14737815056098541044),
        (15.5, 20.0, 0.076893015156271354276),
        (15.5, 35.0, 0.10051997607276150838),
        (15.5, 50.0, -0.063701773557709631488),
        (30.0, 0.1, 3.5107914446214572286e-72),
        (30.0, 1.0, 3.4828697942514829022e-42),
        (30.0, 5.0, 2.6711772782507988106e-21),
        (30.0, 14.9, 8.7088886547594774895e-8),
        (30.0, 15.0, 1.037471020107871819e-7),
        (30.0, 20.0, 0.00012401536360354327865),
        (30.0, 35.0, 0.1047154953284924155),
        (30.0, 50.0, 0.048434257245509417485),
    ];

    #[test]
    fn j_matches_reference_grid() {
        for (nu, x, want) in J_REFERENCE {
            let got = j(nu, x);
            assert!((got - want).abs() < 1e-11, "J_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn j_special_values() {
        assert_eq!(j(0.0, 0.0), 1.0);
        assert_eq!(j(2.0, 0.0), 0.0);
        assert!(j(0.5, PI).abs() < 1e-15);
        let half = (2.0 / PI).sqrt() * 1f64.sin();
        assert!((j(0.5, 1.0) - half).abs() < 1e-14);
    }

    #[test]
    fn half_integer_orders_match_elementary_forms() {
        for i in 1..=100 {
            let x = 0.5 * i as f64;
            let s = (2.0 / (PI * x)).sqrt();
            let j05 = s * x.sin();
            let j15 = s * (x.sin() / x - x.cos());
            assert!((j(0.5, x) - j05).abs() < 1e-11, "x={x}");
            assert!((j(1.5, x) - j15).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn j_rejects_negative_argument() {
        assert!(bessel_j(BesselOrder::new(1.0).unwrap(), -1.0).is_err());
        assert!(BesselOrder::new(-0.5).is_err());
    }

    #[test]
    fn lambda_is_normalized_bessel() {
        let o = BesselOrder::new(0.5).unwrap();
        assert_eq!(bessel_lambda(o, 0.0).unwrap(), 1.0);
        for z in [0.3f64, 2.0, 9.0, 16.0, 40.0] {
            let sinc = z.sin() / z;
            assert!((bessel_lambda(o, z).unwrap() - sinc).abs() < 1e-13, "z={z}");
        }
        let o = BesselOrder::new(7.5).unwrap();
        for z in [3.0f64, 14.0, 18.0, 45.0] {
            let direct = (lgamma(8.5) + 7.5 * (2.0 / z).ln()).exp() * j(7.5, z);
            assert!((bessel_lambda(o, z).unwrap() - direct).abs() < 1e-11, "z={z}");
        }
    }

    #[test]
    fn modified_bessel_reference() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
        let cases = [
            (0, 2.0, 2.2795853023360672674),
            (1, 2.0, 1.5906368546373290634),
            (0, 30.0, 781672297823.97748972),
            (1, 45.0, 2060133462081577166.5),
        ];
        for (order, x, want) in cases {
            let got = bessel_i(order, x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "I_{order}({x})");
        }
        assert!(bessel_i(2, 1.0).is_err());
        assert!(bessel_i(0, -1.0).is_err());
    }

    #[test]
    fn modified_bessel_matches_fifty_term_series() {
        let x: f64 = 2.0;
        let mut fact = 1.0;
        let mut sum = 0.0;
        for k in 0..50 {
            if k > 0 {
                fact *= k as f64;
            }
            sum += (x / 2.0).powi(2 * k) / (fact * fact);
        }
        assert!((bessel_i(0, x).unwrap() - sum).abs() < 1e-14);
    }

    #[test]
    fn struve_reference() {
        assert_eq!(struve_l0(0.0).unwrap(), 0.0);
        let cases = [
            (1.0, 0.71024318593789088874),
            (3.0, 4.6486857317537102826),
            (20.0, 43558282.527641046718),
        ];
        for (x, want) in cases {
            let got = struve_l0(x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "L0({x})");
        }
        assert!(struve_l0(-0.1).is_err());
    }

    #[test]
    fn struve_matches_sixty_term_series() {
        for x in [1.0f64, 3.0] {
            let sum: f64 = (0..60)
                .map(|k| {
                    let k = k as f64;
                    ((2.0 * k + 1.0) * (x / 2.0).ln() - 2.0 * lgamma(k + 1.5)).exp()
                })
                .sum();
            assert!((struve_l0(x).unwrap() - sum).abs() < 1e-13);
        }
    }
}
