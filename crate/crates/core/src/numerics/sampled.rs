use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::error::{LabError, Result};

/// Complex samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub grid: Grid,
    pub values: Vec<Complex64>,
    pub label: String,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if values.len() != grid.n_points {
            return Err(LabError::InvalidArgument(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.n_points
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(LabError::InvalidData(format!(
                "non-finite sample at node {k}"
            )));
        }
        Ok(Self {
            grid,
            values,
            label: label.into(),
        })
    }

    pub fn from_fn<F>(grid: Grid, label: impl Into<String>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let values = grid.nodes().into_iter().map(f).collect();
        Self::new(grid, values, label)
    }

    pub fn from_real_fn<F>(grid: Grid, label: impl Into<String>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64,
    {
        Self::from_fn(grid, label, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zeros(grid: Grid, label: impl Into<String>) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.n_points],
            label: label.into(),
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.grid.nodes()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// Pointwise map `v_k -> op(x_k, v_k)`; fails if the result is not finite.
    pub fn map_with_nodes<F>(&self, label: impl Into<String>, op: F) -> Result<Self>
    where
        F: Fn(f64, Complex64) -> Complex64,
    {
        let values = self
            .grid
            .nodes()
            .into_iter()
            .zip(&self.values)
            .map(|(x, &v)| op(x, v))
            .collect();
        Self::new(self.grid, values, label)
    }

    /// Trapezoidal `∫ f`.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.step()
    }

    /// Trapezoidal `∫ |f|`.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.grid.step()
    }

    /// Linear interpolation; zero outside the grid.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let h = self.grid.step();
        let t = (x - self.grid.origin()) / h;
        if t < 0.0 || t > (self.grid.n_points - 1) as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let k = (t.floor() as usize).min(self.grid.n_points - 2);
        let w = t - k as f64;
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }

    /// `(f(x) + f(-x)) / 2` on a symmetric grid.
    pub fn symmetrized(&self) -> Result<Self> {
        if !self.grid.is_symmetric() {
            return Err(LabError::InvalidArgument(
                "symmetrization needs a symmetric half-step grid".into(),
            ));
        }
        let values = (0..self.grid.n_points)
            .map(|k| 0.5 * (self.values[k] + self.values[self.grid.mirror(k)]))
            .collect();
        Ok(Self {
            values,
            ..self.clone()
        })
    }

    /// Largest `|f(x_k) - f(y_k)|` relative to `max |f|`, for functions on
    /// the same grid.
    pub fn max_relative_diff(&self, other: &Self) -> f64 {
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            return 0.0;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }
}

/// Trapezoidal L² norm on the grid.
pub fn l2_norm(f: &SampledFunction) -> f64 {
    (f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * f.grid.step()).sqrt()
}

/// Complex values at strictly increasing real frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralFunction {
    pub xi_values: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SpectralFunction {
    pub fn new(xi_values: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if xi_values.len() != values.len() {
            return Err(LabError::InvalidArgument(format!(
                "{} frequencies but {} values",
                xi_values.len(),
                values.len()
            )));
        }
        if xi_values.is_empty() {
            return Err(LabError::InvalidArgument("empty frequency grid".into()));
        }
        if xi_values.windows(2).any(|w| !(w[0] < w[1])) || xi_values.iter().any(|x| !x.is_finite()) {
            return Err(LabError::InvalidArgument(
                "frequencies must be finite and strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(LabError::InvalidData("non-finite spectral value".into()));
        }
        Ok(Self { xi_values, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Uniform spacing, if the frequencies are uniform to 1e-9 relative.
    pub fn uniform_step(&self) -> Option<f64> {
        uniform_step(&self.xi_values)
    }
}

pub(crate) fn uniform_step(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let d = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    let tol = 1e-9 * d.abs().max(f64::MIN_POSITIVE);
    xs.windows(2)
        .all(|w| ((w[1] - w[0]) - d).abs() <= tol)
        .then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator(grid: Grid) -> SampledFunction {
        // midpoint value at the jumps, the Fourier-inversion convention
        SampledFunction::from_real_fn(grid, "indicator", |x| {
            if x.abs() < 1.0 {
                1.0
            } else if x.abs() == 1.0 {
                0.5
            } else {
                0.0
            }
        })
        .unwrap()
    }

    #[test]
    fn l2_of_zero_and_indicator() {
        let g = Grid::default();
        assert_eq!(l2_norm(&SampledFunction::zeros(g, "0")), 0.0);
        // jump samples carry weight 1/4 in |f|², an O(h) deviation from 2
        let n = l2_norm(&indicator(g));
        assert!((n * n - 2.0).abs() <= g.step(), "{n}");
    }

    #[test]
    fn l2_homogeneous() {
        let g = Grid::symmetric(8.0, 512, false).unwrap();
        let f = SampledFunction::from_real_fn(g, "g", |x| (-x * x).exp()).unwrap();
        let c = Complex64::new(-3.0, 4.0);
        assert!((l2_norm(&f.scaled(c)) - 5.0 * l2_norm(&f)).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        let g = Grid::symmetric(1.0, 4, false).unwrap();
        let v = vec![Complex64::new(f64::NAN, 0.0); 4];
        assert!(matches!(
            SampledFunction::new(g, v, "bad"),
            Err(LabError::InvalidData(_))
        ));
        assert!(SampledFunction::new(g, vec![Complex64::new(0.0, 0.0); 3], "short").is_err());
        assert!(SpectralFunction::new(vec![1.0, 1.0], vec![Complex64::new(0.0, 0.0); 2]).is_err());
    }
}
