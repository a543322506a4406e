use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Uniform grid along one axis, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
}

/// Tensor-product grid; every axis has at least 5 points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    axes: Vec<Axis>,
}

impl GridSpec {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return param("grid needs at least one axis");
        }
        for (i, a) in axes.iter().enumerate() {
            if a.points < 5 {
                return param(format!("axis {i} has {} points, at least 5 needed", a.points));
            }
            if !(a.upper > a.lower) || !a.lower.is_finite() || !a.upper.is_finite() {
                return param(format!("axis {i} needs finite bounds with lower < upper"));
            }
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        let a = &self.axes[axis];
        (a.upper - a.lower) / (a.points - 1) as f64
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same box with every spacing halved `level` times.
    pub fn refined(&self, level: u32) -> Self {
        let axes = self
            .axes
            .iter()
            .map(|a| Axis { points: (a.points - 1) * (1 << level) + 1, ..*a })
            .collect();
        Self { axes }
    }

    /// Calls `f` with the coordinates of every grid point.
    pub fn for_each_point<F: FnMut(&[f64])>(&self, mut f: F) {
        let dim = self.axes.len();
        let h: Vec<f64> = (0..dim).map(|i| self.spacing(i)).collect();
        let mut index = vec![0usize; dim];
        let mut point: Vec<f64> = self.axes.iter().map(|a| a.lower).collect();
        loop {
            f(&point);
            let mut axis = 0;
            loop {
                if axis == dim {
                    return;
                }
                index[axis] += 1;
                if index[axis] < self.axes[axis].points {
                    point[axis] = self.axes[axis].lower + index[axis] as f64 * h[axis];
                    break;
                }
                index[axis] = 0;
                point[axis] = self.axes[axis].lower;
                axis += 1;
            }
        }
    }
}
