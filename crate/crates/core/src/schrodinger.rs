//! Free Schrödinger evolution `∂_t u = i(Δ - c)u` on ℝ and its radial
//! analogue on complex groups, in closed form and as a Fourier multiplier.
//!
//! Group mode uses `Δ_{G/K} = φ^{-1}(Δ_𝔞 - ‖ρ‖_B²)φ` with `Δ_𝔞 = s^{-2}∂²`,
//! `s` the B-norm scale, so `v = φu` evolves by a rescaled Euclidean flow.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{LabError, Result};
use crate::group::{
    inverse_spherical, phi_weight, spherical_transform_reduced, weighted_profile, GroupModel,
};
use crate::numerics::{
    chirp_transform, fourier_transform_dual, inverse_fourier_transform, Grid, SampledFunction,
    SpectralFunction,
};

/// Fraction of spectral mass in the outer eighth of the band above which
/// a spectral evolution is reported as aliased.
pub const ALIASING_TOL: f64 = 1e-8;
const EDGE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchrodingerParams {
    pub t0: f64,
    #[serde(default)]
    pub c: f64,
    #[serde(default = "one")]
    pub n: u32,
    #[serde(default = "one")]
    pub l: u32,
}

fn one() -> u32 {
    1
}

impl SchrodingerParams {
    pub fn new(t0: f64, c: f64) -> Self {
        Self { t0, c, n: 1, l: 1 }
    }

    fn check_time(&self) -> Result<()> {
        if self.t0 == 0.0 || !self.t0.is_finite() {
            return Err(LabError::InvalidTime(format!("t0 = {} must be finite and nonzero", self.t0)));
        }
        Ok(())
    }

    fn check_forward(&self) -> Result<()> {
        self.check_time()?;
        if self.t0 < 0.0 {
            return Err(LabError::InvalidTime("closed forms need t0 > 0".into()));
        }
        if self.n != 1 {
            return Err(LabError::UnsupportedRank(format!(
                "Euclidean dimension {} (only n = 1 is sampled)",
                self.n
            )));
        }
        Ok(())
    }
}

/// `γ_{c,t}(x) = (4π|t|)^{-n/2} e^{-ict} e^{-iπ sign(t) n/4} e^{ix²/4t}`.
pub fn kernel_gamma(p: &SchrodingerParams, x: f64) -> Result<Complex64> {
    p.check_time()?;
    let t = p.t0;
    let n = p.n as f64;
    let modulus = (4.0 * PI * t.abs()).powf(-0.5 * n);
    let phase = -p.c * t - PI * t.signum() * n / 4.0 + x * x / (4.0 * t);
    Ok(Complex64::from_polar(modulus, phase))
}

fn check_edges(f: &SampledFunction) -> Result<()> {
    let n = f.values.len();
    let edge = f.values[0].norm().max(f.values[n - 1].norm());
    if edge > EDGE_TOL * f.max_abs() {
        return Err(LabError::BoundaryLeak(format!(
            "initial data is {:.3e} of its peak at the grid ends",
            edge / f.max_abs()
        )));
    }
    Ok(())
}

/// `(∫ e^{-ixξ} q(x) dx)` at `ξ_k = scale · x_k` for the nodes `x_k` of `q`.
fn transform_at_scaled_nodes(q: &SampledFunction, scale: f64) -> Vec<Complex64> {
    let grid = q.grid;
    let h = grid.step();
    chirp_transform(
        &q.values,
        grid.origin(),
        h,
        scale * grid.origin(),
        scale * h,
        grid.n_points,
        -1.0,
    )
    .into_iter()
    .map(|v| v * h)
    .collect()
}

/// `u(x,t₀) = (4πt₀)^{-1/2} e^{-ict₀} e^{-iπ/4} e^{ix²/4t₀} ĥ(x/2t₀)` with
/// `h(y) = e^{iy²/4t₀} f(y)`, sampled on the grid of `f`.
pub fn evolve_euclidean_closed_form(p: &SchrodingerParams, f: &SampledFunction) -> Result<SampledFunction> {
    p.check_forward()?;
    check_edges(f)?;
    let t = p.t0;
    let h = f.map_with_nodes("h", |y, v| v * Complex64::from_polar(1.0, y * y / (4.0 * t)))?;
    let hhat = transform_at_scaled_nodes(&h, 1.0 / (2.0 * t));
    let k = Complex64::from_polar((4.0 * PI * t).powf(-0.5), -p.c * t - PI / 4.0);
    let values = f
        .nodes()
        .iter()
        .zip(hhat)
        .map(|(&x, v)| k * Complex64::from_polar(1.0, x * x / (4.0 * t)) * v)
        .collect();
    SampledFunction::new(f.grid, values, "u_closed_form")
}

/// Share of `Σ|F|²` carried by the outer eighth of the band on each side.
pub fn spectral_tail_fraction(spec: &SpectralFunction) -> f64 {
    let n = spec.len();
    let total: f64 = spec.values.iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let cut = n / 8;
    let tail: f64 = spec.values[..cut]
        .iter()
        .chain(&spec.values[n - cut..])
        .map(|v| v.norm_sqr())
        .sum();
    tail / total
}

/// `û_t(ξ) = e^{-it(ξ² + c)} f̂(ξ)` on the dual grid.
pub fn evolve_spectral(p: &SchrodingerParams, f: &SampledFunction, t: f64) -> Result<SampledFunction> {
    let spec = fourier_transform_dual(f);
    let tail = spectral_tail_fraction(&spec);
    if tail > ALIASING_TOL {
        log::warn!("spectral evolution: {tail:.2e} of the mass sits near the band edge");
    }
    let values = spec
        .xi_values
        .iter()
        .zip(&spec.values)
        .map(|(&xi, v)| v * Complex64::from_polar(1.0, -t * (xi * xi + p.c)))
        .collect();
    let mut u = inverse_fourier_transform(&SpectralFunction::new(spec.xi_values, values)?, f.grid)?;
    u.label = "u_spectral".into();
    Ok(u)
}

/// `ũ_t(λ) = e^{-it(‖λ‖_B² + ‖ρ‖_B²)} f̃(λ)`, inverted through the
/// spherical transform.
pub fn evolve_group_spectral(g: &GroupModel, f: &SampledFunction, t: f64) -> Result<SampledFunction> {
    let ft = spherical_transform_reduced(g, f)?;
    let rho2 = g.rho_b_norm_sq();
    let mut ut = ft.clone();
    for (v, &l) in ut.values.iter_mut().zip(&ft.lambda_values) {
        *v *= Complex64::from_polar(1.0, -t * (g.lambda_b_norm_sq(&[l]) + rho2));
    }
    let mut u = inverse_spherical(g, &ut, f.grid)?;
    u.label = "u_group_spectral".into();
    Ok(u)
}

/// `C` in `u φ = C |W|² t₀^{-l/2} e^{-i(t₀‖ρ‖_B² - ‖H‖_B²/4t₀)} ĝ_f(s²H/2t₀)`
/// implied by the rescaled Euclidean kernel: `(s²/4π)^{l/2} e^{-iπl/4}/|W|²`.
pub fn analytic_group_constant(g: &GroupModel) -> Complex64 {
    let l = g.rank as f64;
    let w2 = (g.weyl_order() * g.weyl_order()) as f64;
    let s = g.b_norm_scale;
    Complex64::from_polar((s * s / (4.0 * PI)).powf(0.5 * l) / w2, -PI * l / 4.0)
}

/// `g_f(H) = e^{i‖H‖_B²/4t₀} f(H) φ(H)` for the W-symmetrization of `f`.
pub fn modulated_profile(g: &GroupModel, f: &SampledFunction, t0: f64) -> Result<SampledFunction> {
    let s = g.b_norm_scale;
    weighted_profile(g, f)?
        .map_with_nodes("g_f", |x, v| v * Complex64::from_polar(1.0, s * s * x * x / (4.0 * t0)))
}

/// The group closed form with its constant frozen after one calibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPropagator {
    pub model: GroupModel,
    pub t0: f64,
    pub constant: Complex64,
    /// Node used for calibration.
    pub calibration_point: f64,
}

impl GroupPropagator {
    /// Fixes `C` by matching the spectral evolution of `e^{-H²}` at the node
    /// where `|uφ|` peaks.
    pub fn calibrate(g: &GroupModel, t0: f64) -> Result<Self> {
        g.rank_one_rho()?;
        let grid = Grid::symmetric(16.0, 1 << 11, true)?;
        let f = SampledFunction::from_real_fn(grid, "calibration", |x| (-x * x).exp())?;
        let spectral = evolve_group_spectral(g, &f, t0)?;
        let unit = Self {
            model: g.clone(),
            t0,
            constant: Complex64::new(1.0, 0.0),
            calibration_point: f64::NAN,
        };
        let raw = unit.evolve(&f)?;
        let nodes = grid.nodes();
        let k = (0..grid.len())
            .max_by(|&a, &b| {
                let wa = (spectral.values[a] * phi_weight(g, &[nodes[a]])).norm();
                let wb = (spectral.values[b] * phi_weight(g, &[nodes[b]])).norm();
                wa.total_cmp(&wb)
            })
            .expect("nonempty grid");
        Ok(Self {
            constant: spectral.values[k] / raw.values[k],
            calibration_point: nodes[k],
            ..unit
        })
    }

    /// `K = C |W|² t₀^{-l/2}`.
    pub fn prefactor(&self) -> Complex64 {
        let w2 = (self.model.weyl_order() * self.model.weyl_order()) as f64;
        self.constant * w2 * self.t0.powf(-0.5 * self.model.rank as f64)
    }

    /// `u φ` on the grid of `f`, before dividing by `φ`.
    pub fn evolve_weighted(&self, f: &SampledFunction) -> Result<SampledFunction> {
        let p = SchrodingerParams::new(self.t0, 0.0);
        p.check_forward()?;
        let g = &self.model;
        let t0 = self.t0;
        let s = g.b_norm_scale;
        let gf = modulated_profile(g, f, t0)?;
        let ghat = transform_at_scaled_nodes(&gf, s * s / (2.0 * t0));
        let k = self.prefactor();
        let rho2 = g.rho_b_norm_sq();
        let values = f
            .nodes()
            .iter()
            .zip(ghat)
            .map(|(&x, v)| {
                let hb2 = s * s * x * x;
                k * Complex64::from_polar(1.0, -(t0 * rho2 - hb2 / (4.0 * t0))) * v
            })
            .collect();
        SampledFunction::new(f.grid, values, "u_phi_closed_form")
    }

    pub fn evolve(&self, f: &SampledFunction) -> Result<SampledFunction> {
        let g = &self.model;
        if f.nodes().iter().any(|&x| phi_weight(g, &[x]) == 0.0) {
            return Err(LabError::WallSingularity(
                "closed form divides by φ; use a half-step grid".into(),
            ));
        }
        let mut u = self
            .evolve_weighted(f)?
            .map_with_nodes("u_group_closed_form", |x, v| v / phi_weight(g, &[x]))?;
        u.label = "u_group_closed_form".into();
        Ok(u)
    }
}

/// Closed-form group evolution with a freshly calibrated constant.
pub fn evolve_group_closed_form(
    g: &GroupModel,
    p: &SchrodingerParams,
    f: &SampledFunction,
) -> Result<SampledFunction> {
    p.check_forward()?;
    GroupPropagator::calibrate(g, p.t0)?.evolve(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ResidualMode {
    Euclidean,
    Group { model: GroupModel },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual: f64,
    pub h: f64,
    pub delta: f64,
}

/// `max_k |(u(t+δ) - u(t-δ))/2δ - i(L_h u)(t)|` over interior nodes, where
/// `L_h` is the central-difference `Δ - c` (Euclidean) or its φ-conjugated
/// radial form (group).
pub fn pde_residual(
    slices: [&SampledFunction; 3],
    p: &SchrodingerParams,
    delta: f64,
    mode: &ResidualMode,
) -> Result<ResidualReport> {
    let grid = slices[0].grid;
    if slices.iter().any(|s| s.grid != grid) {
        return Err(LabError::InvalidArgument("time slices live on different grids".into()));
    }
    if !(delta > 0.0) {
        return Err(LabError::InvalidArgument("time step must be positive".into()));
    }
    if grid.len() < 3 {
        return Err(LabError::InvalidArgument("need at least three nodes".into()));
    }
    let h = grid.step();
    let nodes = grid.nodes();
    let (weight, scale, shift): (Vec<f64>, f64, f64) = match mode {
        ResidualMode::Euclidean => (vec![1.0; grid.len()], 1.0, p.c),
        ResidualMode::Group { model } => {
            model.rank_one_rho()?;
            let w: Vec<f64> = nodes.iter().map(|&x| phi_weight(model, &[x])).collect();
            if w.contains(&0.0) {
                return Err(LabError::WallSingularity("group residual needs a half-step grid".into()));
            }
            let s = model.b_norm_scale;
            (w, 1.0 / (s * s), model.rho_b_norm_sq())
        }
    };
    let [prev, now, next] = slices;
    let v: Vec<Complex64> = now.values.iter().zip(&weight).map(|(u, w)| u * w).collect();
    let i = Complex64::i();
    let mut worst: f64 = 0.0;
    for k in 1..grid.len() - 1 {
        let dt = (next.values[k] - prev.values[k]) / (2.0 * delta);
        let lap = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
        let op = (scale * lap - shift * v[k]) / weight[k];
        worst = worst.max((dt - i * op).norm());
    }
    Ok(ResidualReport {
        residual: worst,
        h,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_modulus_and_value() {
        let p = SchrodingerParams::new(1.0 / (4.0 * PI), 0.0);
        let v = kernel_gamma(&p, 0.0).unwrap();
        assert!((v - Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
        let p = SchrodingerParams::new(0.7, 0.3);
        for x in [-3.0, 0.0, 5.5] {
            let m = kernel_gamma(&p, x).unwrap().norm();
            assert!((m - (4.0 * PI * 0.7f64).powf(-0.5)).abs() < 1e-15);
        }
        assert!(matches!(
            kernel_gamma(&SchrodingerParams::new(0.0, 0.0), 1.0),
            Err(LabError::InvalidTime(_))
        ));
    }

    #[test]
    fn gamma_time_reversal() {
        let a = kernel_gamma(&SchrodingerParams::new(0.4, 0.0), 1.3).unwrap();
        let b = kernel_gamma(&SchrodingerParams::new(-0.4, 0.0), 1.3).unwrap();
        assert!((a.conj() - b).norm() < 1e-15);
    }

    #[test]
    fn spectral_identity_at_zero() {
        let grid = Grid::symmetric(16.0, 512, false).unwrap();
        let f = SampledFunction::from_real_fn(grid, "f", |x| (-x * x).exp()).unwrap();
        let u = evolve_spectral(&SchrodingerParams::new(1.0, 0.0), &f, 0.0).unwrap();
        assert!(u.max_relative_diff(&f) < 1e-14);
    }

    #[test]
    fn zero_data_stays_zero() {
        let grid = Grid::symmetric(8.0, 256, true).unwrap();
        let f = SampledFunction::zeros(grid, "0");
        let p = SchrodingerParams::new(1.0, 0.0);
        assert_eq!(evolve_euclidean_closed_form(&p, &f).unwrap().max_abs(), 0.0);
        let r = pde_residual([&f, &f, &f], &p, 0.1, &ResidualMode::Euclidean).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn analytic_constant_sl2c() {
        let c = analytic_group_constant(&GroupModel::sl2c());
        let expected = Complex64::from_polar(0.5 / PI.sqrt(), -PI / 4.0);
        assert!((c - expected).norm() < 1e-15);
    }
}
