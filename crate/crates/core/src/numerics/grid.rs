use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{LabError, Result};

/// Uniform grid of `n_points` nodes on `[x_min, x_max)`.
///
/// Nodes sit at `x_min + k h` with `h = (x_max - x_min) / n_points`, or at
/// `x_min + (k + 1/2) h` when `offset` is set. A symmetric offset grid never
/// contains 0, which is what division by the Weyl weight requires.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub offset: bool,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            x_min: -64.0,
            x_max: 64.0,
            n_points: 1 << 14,
            offset: false,
        }
    }
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize, offset: bool) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(LabError::InvalidArgument(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 2 {
            return Err(LabError::InvalidArgument(
                "grid needs at least two points".into(),
            ));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
            offset,
        })
    }

    /// Grid on `[-radius, radius)`.
    pub fn symmetric(radius: f64, n_points: usize, offset: bool) -> Result<Self> {
        Self::new(-radius, radius, n_points, offset)
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_points as f64
    }

    /// First node.
    pub fn origin(&self) -> f64 {
        if self.offset {
            self.x_min + 0.5 * self.step()
        } else {
            self.x_min
        }
    }

    pub fn node(&self, k: usize) -> f64 {
        self.origin() + k as f64 * self.step()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.node(k)).collect()
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    /// True when the node set is invariant under `x -> -x`.
    pub fn is_symmetric(&self) -> bool {
        self.offset && (self.x_min + self.x_max).abs() <= 1e-12 * self.x_max.abs().max(1.0)
    }

    /// Index of the node `-x_k` on a symmetric grid.
    pub fn mirror(&self, k: usize) -> usize {
        self.n_points - 1 - k
    }

    /// Frequency spacing of the dual grid, `2π / (n h)`.
    pub fn dual_step(&self) -> f64 {
        2.0 * PI / (self.n_points as f64 * self.step())
    }

    /// Dual frequencies `(j - n/2) · 2π/(n h)`, the grid on which the
    /// forward and inverse transforms are exact inverses of each other.
    pub fn dual_frequencies(&self) -> Vec<f64> {
        let m = (self.n_points / 2) as f64;
        let d = self.dual_step();
        (0..self.n_points).map(|j| (j as f64 - m) * d).collect()
    }

    /// Largest `|x|` covered by a node.
    pub fn radius(&self) -> f64 {
        self.node(0).abs().max(self.node(self.n_points - 1).abs())
    }

    /// Same extent with `factor` times as many points.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            n_points: self.n_points * factor,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_bounds() {
        assert!(Grid::new(1.0, 1.0, 8, false).is_err());
        assert!(Grid::new(2.0, 1.0, 8, false).is_err());
        assert!(Grid::new(-1.0, 1.0, 1, false).is_err());
        assert!(Grid::new(f64::NAN, 1.0, 8, false).is_err());
    }

    #[test]
    fn offset_grid_avoids_zero() {
        let g = Grid::symmetric(4.0, 64, true);
        let g = g.unwrap();
        assert!(g.nodes().iter().all(|&x| x != 0.0));
        assert!(g.is_symmetric());
        for k in 0..g.len() {
            assert_eq!(g.node(k), -g.node(g.mirror(k)));
        }
        let plain = Grid::symmetric(4.0, 64, false).unwrap();
        assert!(plain.nodes().contains(&0.0));
        assert!(!plain.is_symmetric());
    }

    #[test]
    fn default_grid() {
        let g = Grid::default();
        assert_eq!(g.n_points, 16384);
        assert_eq!(g.step(), 128.0 / 16384.0);
        let xi = g.dual_frequencies();
        assert_eq!(xi[g.n_points / 2], 0.0);
        assert!((xi[1] - xi[0] - g.dual_step()).abs() < 1e-12);
    }
}
