//! Bi-K-invariant analysis on complex semisimple groups of rank one and
//! products of rank-one factors, reduced to Fourier analysis on `𝔞 ≅ ℝ^l`.
//!
//! Conventions: `φ(H) = Σ_{s∈W} det(s) e^{sρ(H)}` (for SL(2,ℂ) this is
//! `2 sinh 2H`), `φ_λ(H) = c(λ) Σ_s det(s) e^{-isλ(H)} / φ(H)` with `c` fixed
//! by `φ_λ(0) = 1`, and `f̃(λ) = ∫ f φ_λ φ² dH`. With `g = fφ` this gives
//! `f̃(λ) = c(λ) |W| ĝ(λ)` for W-invariant `f`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::numerics::{
    fourier_transform, inverse_fourier_transform, Grid, SampledFunction, SpectralFunction,
};

/// Relative size allowed for `|fφ²|` at the grid ends.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Relative W-invariance defect tolerated by [`inverse_spherical`].
pub const W_INVARIANCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylElement {
    /// Row-major `l × l` orthogonal matrix.
    pub matrix: Vec<Vec<f64>>,
    pub det: i32,
}

impl WeylElement {
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn compose(&self, other: &Self) -> Self {
        let l = self.matrix.len();
        let matrix = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| (0..l).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        Self {
            matrix,
            det: self.det * other.det,
        }
    }

    fn close_to(&self, other: &Self) -> bool {
        self.det == other.det
            && self
                .matrix
                .iter()
                .flatten()
                .zip(other.matrix.iter().flatten())
                .all(|(a, b)| (a - b).abs() < 1e-12)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupModel {
    pub name: String,
    pub rank: usize,
    /// Positive roots as coefficient vectors, `α(H) = α · H`.
    pub positive_roots: Vec<Vec<f64>>,
    pub multiplicities: Vec<u32>,
    pub rho: Vec<f64>,
    pub weyl_elements: Vec<WeylElement>,
    /// `‖H‖_B = b_norm_scale · |H|`.
    pub b_norm_scale: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl GroupModel {
    /// Validates root and Weyl data; `rho` is derived from the roots.
    pub fn new(
        name: impl Into<String>,
        positive_roots: Vec<Vec<f64>>,
        multiplicities: Vec<u32>,
        weyl_elements: Vec<WeylElement>,
        b_norm_scale: f64,
    ) -> Result<Self> {
        let rank = positive_roots.first().map_or(0, Vec::len);
        if rank == 0 || positive_roots.iter().any(|a| a.len() != rank) {
            return Err(LabError::InvalidArgument("roots must share a positive rank".into()));
        }
        if multiplicities.len() != positive_roots.len() {
            return Err(LabError::InvalidArgument("one multiplicity per root".into()));
        }
        if !(b_norm_scale > 0.0) {
            return Err(LabError::InvalidArgument("b_norm_scale must be positive".into()));
        }
        let mut rho = vec![0.0; rank];
        for (a, &m) in positive_roots.iter().zip(&multiplicities) {
            for (r, x) in rho.iter_mut().zip(a) {
                *r += 0.5 * m as f64 * x;
            }
        }
        let model = Self {
            name: name.into(),
            rank,
            positive_roots,
            multiplicities,
            rho,
            weyl_elements,
            b_norm_scale,
        };
        model.check_weyl()?;
        Ok(model)
    }

    fn check_weyl(&self) -> Result<()> {
        let w = &self.weyl_elements;
        let bad = |msg: &str| Err(LabError::InvalidArgument(format!("{}: {msg}", self.name)));
        if w.is_empty() {
            return bad("empty Weyl group");
        }
        for s in w {
            if s.matrix.len() != self.rank || s.matrix.iter().any(|r| r.len() != self.rank) {
                return bad("Weyl matrix of wrong size");
            }
            for t in w {
                let st = s.compose(t);
                if !w.iter().any(|u| u.close_to(&st)) {
                    return bad("Weyl elements not closed under composition");
                }
            }
            for a in &self.positive_roots {
                let sa = s.apply(a);
                let hit = self.positive_roots.iter().any(|b| {
                    sa.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
                        || sa.iter().zip(b).all(|(x, y)| (x + y).abs() < 1e-12)
                });
                if !hit {
                    return bad("Weyl element does not preserve the roots");
                }
            }
        }
        Ok(())
    }

    /// SL(2,ℂ): `α(H) = 2H` with multiplicity 2, `W = {±1}`, `‖H‖_B = 4|H|`.
    pub fn sl2c() -> Self {
        let w = vec![
            WeylElement {
                matrix: vec![vec![1.0]],
                det: 1,
            },
            WeylElement {
                matrix: vec![vec![-1.0]],
                det: -1,
            },
        ];
        Self::new("sl2c", vec![vec![2.0]], vec![2], w, 4.0).expect("valid preset")
    }

    /// Direct product; roots and Weyl groups act block-diagonally.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        if (a.b_norm_scale - b.b_norm_scale).abs() > 1e-12 {
            return Err(LabError::InvalidArgument("factors need a common B-norm scale".into()));
        }
        let l = a.rank + b.rank;
        let pad = |v: &[f64], at: usize| {
            let mut out = vec![0.0; l];
            out[at..at + v.len()].copy_from_slice(v);
            out
        };
        let mut roots: Vec<Vec<f64>> = a.positive_roots.iter().map(|r| pad(r, 0)).collect();
        roots.extend(b.positive_roots.iter().map(|r| pad(r, a.rank)));
        let mut mult = a.multiplicities.clone();
        mult.extend(&b.multiplicities);
        let mut weyl = Vec::new();
        for s in &a.weyl_elements {
            for t in &b.weyl_elements {
                let mut m = vec![vec![0.0; l]; l];
                for (row, src) in m.iter_mut().zip(&s.matrix) {
                    row[..a.rank].copy_from_slice(src);
                }
                for i in 0..b.rank {
                    m[a.rank + i][a.rank..].copy_from_slice(&t.matrix[i]);
                }
                weyl.push(WeylElement {
                    matrix: m,
                    det: s.det * t.det,
                });
            }
        }
        Self::new(format!("{}×{}", a.name, b.name), roots, mult, weyl, a.b_norm_scale)
    }

    /// Presets: `sl2c` and `sl2c×sl2c` (ASCII `sl2cxsl2c` also accepted).
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "sl2c" => Ok(Self::sl2c()),
            "sl2c×sl2c" | "sl2cxsl2c" => Self::product(&Self::sl2c(), &Self::sl2c()),
            other => Err(LabError::InvalidArgument(format!("unknown group preset {other:?}"))),
        }
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_elements.len()
    }

    pub fn b_norm(&self, h: &[f64]) -> f64 {
        self.b_norm_scale * norm(h)
    }

    /// `‖ρ‖_B²`, the damping constant of the radial Schrödinger equation.
    pub fn rho_b_norm_sq(&self) -> f64 {
        dot(&self.rho, &self.rho) / (self.b_norm_scale * self.b_norm_scale)
    }

    /// `‖λ‖_B²` for a frequency in coordinates dual to `H`.
    pub fn lambda_b_norm_sq(&self, lambda: &[f64]) -> f64 {
        dot(lambda, lambda) / (self.b_norm_scale * self.b_norm_scale)
    }

    /// The coordinate of `ρ` when the model has rank one.
    pub fn rank_one_rho(&self) -> Result<f64> {
        if self.rank != 1 {
            return Err(LabError::UnsupportedRank(format!(
                "{} has rank {}; transforms are implemented in rank one",
                self.name, self.rank
            )));
        }
        Ok(self.rho[0])
    }

    /// Per-coordinate `ρ_j` when every root lies on a coordinate axis, so
    /// that `φ`, `c` and `φ_λ` factor over coordinates.
    fn factor_rhos(&self) -> Vec<f64> {
        for a in &self.positive_roots {
            assert!(
                a.iter().filter(|x| **x != 0.0).count() == 1,
                "{}: only products of rank-one factors are supported",
                self.name
            );
        }
        self.rho.clone()
    }
}

/// `φ(H) = Σ_{s∈W} det(s) e^{ρ(s⁻¹H)}`.
pub fn phi_weight(g: &GroupModel, h: &[f64]) -> f64 {
    assert_eq!(h.len(), g.rank, "H has the wrong rank");
    g.weyl_elements
        .iter()
        .map(|s| {
            // s is orthogonal: s⁻¹ = sᵀ, and ρ(sᵀH) = (sρ)·H
            let s_rho = s.apply(&g.rho);
            s.det as f64 * dot(&s_rho, h).exp()
        })
        .sum()
}

fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

fn x_over_sinh(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x / x.sinh()
    }
}

/// `φ_λ(H)`; per factor `ρ sin(λH)/(λ sinh ρH) = sinc(λH) · ρH/sinh(ρH)`,
/// which covers the walls `H = 0` and `λ = 0` by continuity.
pub fn spherical_function(g: &GroupModel, lambda: &[f64], h: &[f64]) -> Complex64 {
    assert_eq!(lambda.len(), g.rank, "λ has the wrong rank");
    assert_eq!(h.len(), g.rank, "H has the wrong rank");
    let v: f64 = g
        .factor_rhos()
        .iter()
        .zip(lambda.iter().zip(h))
        .map(|(&r, (&l, &x))| sinc(l * x) * x_over_sinh(r * x))
        .product();
    Complex64::new(v, 0.0)
}

/// `φ₀(H)`; for SL(2,ℂ), `2H / sinh 2H`.
pub fn phi_zero(g: &GroupModel, h: &[f64]) -> f64 {
    spherical_function(g, &vec![0.0; g.rank], h).re
}

/// `π(μ) = Π_{α>0} α·μ` for complex `μ`.
fn root_product(g: &GroupModel, mu: &[Complex64]) -> Complex64 {
    g.positive_roots
        .iter()
        .map(|a| a.iter().zip(mu).map(|(x, m)| m * x).sum::<Complex64>())
        .product()
}

/// `c(λ)^{-1} = π(-iλ)/π(ρ)`, a polynomial of degree `#roots`.
pub fn c_function_inverse(g: &GroupModel, lambda: &[f64]) -> Complex64 {
    let mu: Vec<Complex64> = lambda.iter().map(|&l| Complex64::new(0.0, -l)).collect();
    let rho: Vec<Complex64> = g.rho.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    root_product(g, &mu) / root_product(g, &rho)
}

/// `c(λ) = π(ρ)/π(-iλ)`; for SL(2,ℂ), `2i/λ`. Singular on the walls.
pub fn c_function(g: &GroupModel, lambda: &[f64]) -> Result<Complex64> {
    let inv = c_function_inverse(g, lambda);
    if inv.norm() == 0.0 {
        return Err(LabError::WallSingularity(format!(
            "c(λ) is singular at λ = {lambda:?}"
        )));
    }
    Ok(inv.inv())
}

/// `f̃` sampled at rank-one frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalTransform {
    pub lambda_values: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SphericalTransform {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max |F(λ) - F(-λ)|` over the pairs present in the sample set.
    pub fn w_defect(&self) -> f64 {
        let lam = &self.lambda_values;
        let tol = 1e-9 * lam.iter().fold(1.0f64, |m, l| m.max(l.abs()));
        let mut worst: f64 = 0.0;
        for (i, &l) in lam.iter().enumerate() {
            if l <= 0.0 {
                continue;
            }
            let j = lam.partition_point(|&x| x < -l - tol);
            if j < lam.len() && (lam[j] + l).abs() <= tol {
                worst = worst.max((self.values[i] - self.values[j]).norm());
            }
        }
        worst
    }

    pub fn as_spectral(&self) -> Result<SpectralFunction> {
        SpectralFunction::new(self.lambda_values.clone(), self.values.clone())
    }
}

fn check_boundary(f: &SampledFunction, weight: impl Fn(f64) -> f64) -> Result<()> {
    let w: Vec<f64> = f
        .nodes()
        .iter()
        .zip(&f.values)
        .map(|(&x, v)| v.norm() * weight(x))
        .collect();
    let peak = w.iter().cloned().fold(0.0, f64::max);
    let edge = w[0].max(w[w.len() - 1]);
    if edge > BOUNDARY_TOL * peak {
        return Err(LabError::BoundaryLeak(format!(
            "weighted samples at the grid ends are {:.3e} of the peak",
            edge / peak
        )));
    }
    Ok(())
}

fn check_lambdas(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() || lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::InvalidArgument(
            "frequencies must be nonempty and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Oracle: `f̃(λ) = Σ_k f(H_k) φ_λ(H_k) φ(H_k)² h`, `O(N M)`.
pub fn spherical_transform_direct_at(
    g: &GroupModel,
    f: &SampledFunction,
    lambdas: &[f64],
) -> Result<SphericalTransform> {
    g.rank_one_rho()?;
    check_lambdas(lambdas)?;
    let phi2: Vec<f64> = f.nodes().iter().map(|&x| phi_weight(g, &[x]).powi(2)).collect();
    check_boundary(f, |x| phi_weight(g, &[x]).powi(2))?;
    let h = f.grid.step();
    let nodes = f.nodes();
    let values = lambdas
        .iter()
        .map(|&l| {
            nodes
                .iter()
                .zip(&f.values)
                .zip(&phi2)
                .filter(|((_, v), _)| v.norm() != 0.0)
                .map(|((&x, v), w)| v * spherical_function(g, &[l], &[x]) * *w)
                .sum::<Complex64>()
                * h
        })
        .collect();
    Ok(SphericalTransform {
        lambda_values: lambdas.to_vec(),
        values,
    })
}

/// [`spherical_transform_direct_at`] on the dual grid of `f`.
pub fn spherical_transform_direct(g: &GroupModel, f: &SampledFunction) -> Result<SphericalTransform> {
    spherical_transform_direct_at(g, f, &f.grid.dual_frequencies())
}

/// `g = f φ` for the W-symmetrization of `f`; odd under `H ↦ -H`.
pub fn weighted_profile(g: &GroupModel, f: &SampledFunction) -> Result<SampledFunction> {
    g.rank_one_rho()?;
    if !f.grid.is_symmetric() {
        return Err(LabError::InvalidArgument(
            "the reduced transform needs a half-step grid symmetric about 0".into(),
        ));
    }
    f.symmetrized()?
        .map_with_nodes("g", |x, v| v * phi_weight(g, &[x]))
}

/// `f̃(λ) = c(λ)|W| ĝ(λ)`, with the limit `ρ|W| ∫ H g` at `λ = 0`.
pub fn spherical_transform_reduced_at(
    g: &GroupModel,
    f: &SampledFunction,
    lambdas: &[f64],
) -> Result<SphericalTransform> {
    let rho = g.rank_one_rho()?;
    check_lambdas(lambdas)?;
    check_boundary(f, |x| phi_weight(g, &[x]).powi(2))?;
    let gf = weighted_profile(g, f)?;
    let ghat = fourier_transform(&gf, lambdas)?;
    let w = g.weyl_order() as f64;
    let first_moment = gf
        .nodes()
        .iter()
        .zip(&gf.values)
        .map(|(&x, v)| v * x)
        .sum::<Complex64>()
        * gf.grid.step();
    let values = lambdas
        .iter()
        .zip(&ghat.values)
        .map(|(&l, v)| {
            if l == 0.0 {
                first_moment * rho * w
            } else {
                v * w / c_function_inverse(g, &[l])
            }
        })
        .collect();
    Ok(SphericalTransform {
        lambda_values: lambdas.to_vec(),
        values,
    })
}

/// [`spherical_transform_reduced_at`] on the dual grid (one FFT).
pub fn spherical_transform_reduced(g: &GroupModel, f: &SampledFunction) -> Result<SphericalTransform> {
    spherical_transform_reduced_at(g, f, &f.grid.dual_frequencies())
}

/// `ĝ = F/(c|W|)`, `g` by the inverse Fourier transform, `f = g/φ`.
pub fn inverse_spherical(g: &GroupModel, big_f: &SphericalTransform, grid: Grid) -> Result<SampledFunction> {
    g.rank_one_rho()?;
    if grid.nodes().iter().any(|&x| phi_weight(g, &[x]) == 0.0) {
        return Err(LabError::WallSingularity(
            "grid has a node on a wall where φ = 0; use a half-step grid".into(),
        ));
    }
    let defect = big_f.w_defect();
    if defect > W_INVARIANCE_TOL * big_f.max_abs() {
        return Err(LabError::WallSingularity(format!(
            "spectral data is not W-invariant (defect {defect:.3e})"
        )));
    }
    let w = g.weyl_order() as f64;
    let ghat: Vec<Complex64> = big_f
        .lambda_values
        .iter()
        .zip(&big_f.values)
        .map(|(&l, v)| v * c_function_inverse(g, &[l]) / w)
        .collect();
    let gg = inverse_fourier_transform(
        &SpectralFunction::new(big_f.lambda_values.clone(), ghat)?,
        grid,
    )?;
    gg.map_with_nodes("inverse_spherical", |x, v| v / phi_weight(g, &[x]))
}
