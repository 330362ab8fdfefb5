//! Compactly supported functions with prescribed Fourier decay, built as
//! infinite convolutions of normalized indicators.
//!
//! The factor `1_{[-a,a]}/(2a)` has transform `sin(aξ)/(aξ)`, so the
//! convolution over `k` of these is supported in `[-Σa_k, Σa_k]` and has
//! transform `Π_k sin(a_k ξ)/(a_k ξ)`. Taking `a_k = θ(2^k)` makes `Σ a_k`
//! finite exactly when `∫ θ(r)/r dr` is, for nonincreasing `θ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::envelope::{dyadic_radii, fit_windows, relative_drift, WindowFit};
use crate::error::{LabError, Result};
use crate::numerics::{inverse_fourier_transform, Grid, SampledFunction, SpectralFunction};
use crate::profiles::{classify_integral, default_schedule, DecayProfile, ProfileKind, Verdict};

/// Factors below this width are numerically the identity at grid resolution.
pub const TRUNCATION: f64 = 1e-8;
pub const MAX_FACTORS: usize = 1 << 20;
/// Below this `a|ξ|` a factor is folded into the series for `ln sinc`.
const SERIES_SWITCH: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SincProductSpec {
    /// Positive, nonincreasing widths.
    pub a: Vec<f64>,
    pub support_radius: f64,
    /// Set when the envelope is identically zero and no factor survives.
    #[serde(default)]
    pub trivial: bool,
}

impl SincProductSpec {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(LabError::InvalidArgument("widths must be positive".into()));
        }
        if a.windows(2).any(|w| w[1] > w[0]) {
            return Err(LabError::InvalidArgument("widths must be nonincreasing".into()));
        }
        let support_radius = a.iter().sum();
        let trivial = a.is_empty();
        Ok(Self {
            a,
            support_radius,
            trivial,
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// `a_k = θ(2^k)`, `k = 1, 2, …` until `a_k < 1e-8`.
pub fn spec_from_theta(theta: &DecayProfile) -> Result<SincProductSpec> {
    if theta.kind != ProfileKind::ThetaDecreasing {
        return Err(LabError::Profile(format!(
            "{} is not a decreasing profile",
            theta.name
        )));
    }
    let diag = classify_integral(theta, &default_schedule())?;
    if diag.verdict != Verdict::LikelyConvergent {
        return Err(LabError::DivergentProfile(format!(
            "{}: Ingham integral classified {:?}",
            theta.name, diag.verdict
        )));
    }
    let mut a: Vec<f64> = Vec::new();
    for k in 1..=MAX_FACTORS {
        let ak = theta.evaluate_log(k as f64 * LN_2)?;
        if ak < TRUNCATION {
            return SincProductSpec::new(a);
        }
        if let Some(&prev) = a.last() {
            if ak > prev * (1.0 + 1e-12) {
                return Err(LabError::Profile(format!(
                    "{} increases between 2^{} and 2^{k}",
                    theta.name,
                    k - 1
                )));
            }
        }
        a.push(ak.min(*a.last().unwrap_or(&ak)));
    }
    Err(LabError::DivergentProfile(format!(
        "{}: θ(2^k) still above {TRUNCATION} after {MAX_FACTORS} terms",
        theta.name
    )))
}

/// Delegates to [`spec_from_theta`] with `θ(r) = ψ(max(r,1))/max(r,1)`.
pub fn spec_from_psi(psi: &DecayProfile) -> Result<SincProductSpec> {
    if psi.kind != ProfileKind::PsiNondecreasing {
        return Err(LabError::Profile(format!(
            "{} is not a nondecreasing profile",
            psi.name
        )));
    }
    spec_from_theta(&DecayProfile::theta_from_psi(psi))
}

/// `ψ(r) = r θ(r)`, the decay exponent certified for θ-built specs.
pub fn psi_of_theta(theta: &DecayProfile) -> DecayProfile {
    let t = theta.clone();
    let tl = theta.clone();
    DecayProfile::new(ProfileKind::PsiNondecreasing, format!("r*{}", theta.name), move |r| {
        r * t.evaluate(r).unwrap_or(f64::NAN)
    })
    .with_log_eval(move |s| s.exp() * tl.evaluate_log(s).unwrap_or(f64::NAN))
}

/// Evaluator for `Π sinc(a_k ξ)` with suffix sums for the tiny factors.
#[derive(Debug, Clone)]
pub struct SincProduct {
    a: Vec<f64>,
    /// `suffix2[k] = Σ_{j ≥ k} a_j²`, likewise for fourth powers.
    suffix2: Vec<f64>,
    suffix4: Vec<f64>,
}

impl SincProduct {
    pub fn new(spec: &SincProductSpec) -> Self {
        let n = spec.a.len();
        let mut suffix2 = vec![0.0; n + 1];
        let mut suffix4 = vec![0.0; n + 1];
        for k in (0..n).rev() {
            let a2 = spec.a[k] * spec.a[k];
            suffix2[k] = suffix2[k + 1] + a2;
            suffix4[k] = suffix4[k + 1] + a2 * a2;
        }
        Self {
            a: spec.a.clone(),
            suffix2,
            suffix4,
        }
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let x = xi.abs();
        if x == 0.0 {
            return 1.0;
        }
        let head = self.a.partition_point(|&a| a * x >= SERIES_SWITCH);
        let mut p = 1.0;
        for &a in &self.a[..head] {
            let t = a * x;
            p *= t.sin() / t;
        }
        // ln(sin t / t) = -t²/6 - t⁴/180 - O(t⁶)
        let x2 = x * x;
        p * (-x2 * self.suffix2[head] / 6.0 - x2 * x2 * self.suffix4[head] / 180.0).exp()
    }

    /// `Π_{a_k|ξ| ≥ 2} (a_k|ξ|)^{-1}`, an upper bound for `|eval(ξ)|`.
    pub fn decay_bound(&self, xi: f64) -> f64 {
        let x = xi.abs();
        self.a
            .iter()
            .take_while(|&&a| a * x >= 2.0)
            .map(|&a| 1.0 / (a * x))
            .product()
    }
}

/// `f̂(ξ) = Π_k sin(a_k ξ)/(a_k ξ)`.
pub fn evaluate_product_fourier(spec: &SincProductSpec, xi: f64) -> Complex64 {
    Complex64::new(SincProduct::new(spec).eval(xi), 0.0)
}

/// Samples `f` on `grid` by inverting the product on the dual grid.
///
/// The product is real and even, so `f` is real; the imaginary residue of
/// the unpaired Nyquist frequency is dropped.
pub fn realize_function(spec: &SincProductSpec, grid: Grid) -> Result<SampledFunction> {
    if spec.trivial || spec.a.is_empty() {
        return Err(LabError::InvalidArgument(
            "trivial spec: the empty product has no function realization".into(),
        ));
    }
    let radius = spec.support_radius;
    let margin = (0.05 * radius).max(8.0 * grid.step());
    if grid.x_min > -(radius + margin) || grid.x_max < radius + margin {
        return Err(LabError::GridTooSmall(format!(
            "grid [{}, {}] does not cover [-{r}, {r}] with margin {margin}",
            grid.x_min,
            grid.x_max,
            r = radius
        )));
    }
    let product = SincProduct::new(spec);
    let xi = grid.dual_frequencies();
    let values = xi.iter().map(|&x| Complex64::new(product.eval(x), 0.0)).collect();
    let f = inverse_fourier_transform(&SpectralFunction::new(xi, values)?, grid)?;
    let real = f.values.iter().map(|v| Complex64::new(v.re, 0.0)).collect();
    SampledFunction::new(grid, real, "ingham_product")
}

/// `Σ_{|x| > R + h} |f(x)| h / ∫ |f|`.
pub fn support_leakage(f: &SampledFunction, radius: f64) -> f64 {
    let h = f.grid.step();
    let total = f.l1_norm();
    if total == 0.0 {
        return 0.0;
    }
    let outside: f64 = f
        .grid
        .nodes()
        .iter()
        .zip(&f.values)
        .filter(|(x, _)| x.abs() > radius + h)
        .map(|(_, v)| v.norm())
        .sum::<f64>()
        * h;
    outside / total
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCertificate {
    pub profile: String,
    /// Fraction of `ψ` certified, `|f̂| ≤ C e^{-slack·ψ}`.
    pub slack: f64,
    pub windows: Vec<WindowFit>,
    pub drift: f64,
    pub stable: bool,
}

pub const CERTIFICATE_DRIFT: f64 = 0.10;
pub const CERTIFICATE_SLACK: f64 = 0.5;

/// Fits `C*(Ξ) = max_{|ξ| ≤ Ξ} |f̂(ξ)| e^{slack·ψ(|ξ|)}` for
/// `Ξ ∈ {Ξ₀, 2Ξ₀, 4Ξ₀}` on a net of spacing `min_k a_k`-resolving step.
pub fn envelope_certificate(
    spec: &SincProductSpec,
    psi: &DecayProfile,
    xi0: f64,
    slack: f64,
) -> Result<EnvelopeCertificate> {
    if !(xi0 > 0.0) {
        return Err(LabError::InvalidArgument("window base must be positive".into()));
    }
    let product = SincProduct::new(spec);
    let xi_max = 4.0 * xi0;
    // resolve the oscillation of the widest factor
    let step = spec.a.first().map_or(0.05, |a0| (0.05 / a0).min(0.05));
    let count = (xi_max / step).ceil() as usize;
    let mut points = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let xi = xi_max * i as f64 / count as f64;
        let v = product.eval(xi).abs();
        let lr = if v > 0.0 {
            v.ln() + slack * psi.evaluate(xi)?
        } else {
            f64::NEG_INFINITY
        };
        points.push((xi, lr));
    }
    let windows = fit_windows(&points, &dyadic_radii(xi_max));
    let drift = relative_drift(&windows);
    Ok(EnvelopeCertificate {
        profile: psi.name.clone(),
        slack,
        stable: drift.abs() < CERTIFICATE_DRIFT,
        windows,
        drift,
    })
}
