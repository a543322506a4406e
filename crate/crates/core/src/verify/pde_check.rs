use serde::{Deserialize, Serialize};

use super::GridSpec;
use crate::analytic::telegraph_residual_summary;
use crate::error::{param, Result};

/// Smallest observed convergence order accepted by [`pde_check`].
pub const MIN_ORDER: f64 = 1.8;

/// Residual on one refinement level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelResidual {
    pub level: u32,
    pub spacing: f64,
    pub residual: f64,
    pub roundoff_floor: f64,
}

impl LevelResidual {
    /// Residual indistinguishable from rounding error.
    pub fn at_roundoff(&self) -> bool {
        self.residual <= self.roundoff_floor
    }
}

/// Convergence of the finite-difference residual under grid halving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdeReport {
    pub m_exp: f64,
    pub d: usize,
    pub levels: Vec<LevelResidual>,
    /// `log2` of successive residual ratios; `None` where both levels sit at
    /// the rounding floor.
    pub orders: Vec<Option<f64>>,
    /// Every level at the rounding floor: the stencil is exact for this `q`.
    pub exact: bool,
    pub passed: bool,
}

impl PdeReport {
    /// Smallest order among the levels that carry truncation error.
    pub fn min_order(&self) -> Option<f64> {
        self.orders.iter().flatten().copied().reduce(f64::min)
    }
}

/// Evaluates the residual of `q = (c^2 t^2 - |x|^2)^{m_exp}` on `levels`
/// successively halved grids and estimates the convergence order.
///
/// A refinement step passes when its order is at least [`MIN_ORDER`] or the
/// finer residual is already at the rounding floor.
pub fn pde_check(m_exp: f64, d: usize, c: f64, grid: &GridSpec, levels: u32) -> Result<PdeReport> {
    if levels < 2 {
        return param(format!("need at least 2 refinement levels, got {levels}"));
    }
    let mut rows = Vec::with_capacity(levels as usize);
    for level in 0..levels {
        let g = grid.refined(level);
        let s = telegraph_residual_summary(m_exp, d, c, &g)?;
        rows.push(LevelResidual {
            level,
            spacing: g.spacing(0),
            residual: s.max_residual,
            roundoff_floor: s.roundoff_floor,
        });
    }
    let mut orders = Vec::with_capacity(rows.len() - 1);
    let mut passed = true;
    for pair in rows.windows(2) {
        let (coarse, fine) = (pair[0], pair[1]);
        if coarse.at_roundoff() && fine.at_roundoff() {
            orders.push(None);
            continue;
        }
        let order = (coarse.residual / fine.residual).log2();
        orders.push(Some(order));
        if !(order >= MIN_ORDER || fine.at_roundoff()) {
            passed = false;
        }
    }
    let exact = rows.iter().all(LevelResidual::at_roundoff);
    Ok(PdeReport { m_exp, d, levels: rows, orders, exact, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Axis;

    fn grid(d: usize) -> GridSpec {
        let mut axes = vec![Axis { lower: 1.5, upper: 2.0, points: 9 }];
        axes.extend((0..d).map(|_| Axis { lower: -0.2, upper: 0.2, points: 9 }));
        GridSpec::new(axes).unwrap()
    }

    #[test]
    fn wave_case_is_second_order() {
        let r = pde_check(-1.0, 3, 1.0, &grid(3), 3).unwrap();
        assert!(r.passed && !r.exact);
        assert!(r.min_order().unwrap() > 1.9);
    }

    #[test]
    fn quadratic_is_exact() {
        let r = pde_check(1.0, 2, 1.0, &grid(2), 3).unwrap();
        assert!(r.exact && r.passed);
        assert_eq!(r.min_order(), None);
    }

    #[test]
    fn needs_two_levels() {
        assert!(pde_check(2.0, 2, 1.0, &grid(2), 1).is_err());
    }
}
