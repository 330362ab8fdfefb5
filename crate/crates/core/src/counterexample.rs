//! Sharpness examples on SL(2,ℂ): nonzero compactly supported initial data
//! whose Schrödinger solution at `t₀` obeys `|u| ≤ C φ₀^α e^{-decay}` for
//! `α < 1`, while the full-strength `α = 1` bound fails.
//!
//! Envelopes are checked in three pieces: windows `[0, R/4] ⊂ [0, R/2] ⊂
//! [0, R]` on the grid, a rigorous bound `|uφ| ≤ |K| ‖g_f‖₁` carried from
//! `R` out to `4 max(M, R)` in log space, and the inequality chain beyond
//! the threshold `M` on a log-spaced net.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::envelope::{dyadic_radii, fit_windows, growth_factors, relative_drift, EnvelopeVerdict, WindowFit};
use crate::error::{LabError, Result};
use crate::group::{phi_weight, GroupModel};
use crate::ingham::{SincProduct, SincProductSpec};
use crate::numerics::quadrature::adaptive_simpson;
use crate::numerics::{inverse_fourier_transform, Grid, SampledFunction, SpectralFunction};
use crate::profiles::{classify_integral, default_schedule, DecayProfile, ProfileSpec, Verdict};
use crate::schrodinger::{modulated_profile, GroupPropagator};

pub const DEFAULT_SLACK: f64 = 0.10;
pub const DEFAULT_WINDOW_RADIUS: f64 = 40.0;
/// Per-window growth that counts as unbounded in the dichotomy experiment.
pub const DIVERGENCE_GROWTH: f64 = 10.0;
/// Constant in `e^{|H|} ≤ C sinh 2|H|`.
pub const SINH_CONSTANT: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleParams {
    pub alpha: f64,
    pub eta: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub t0: f64,
    pub theta: ProfileSpec,
}

impl CounterexampleParams {
    /// `β = 1 - α - η`, `β' = β/2`, `θ(r) = 1/log(e + r)`.
    pub fn new(alpha: f64, eta: f64, t0: f64) -> Result<Self> {
        let beta = 1.0 - alpha - eta;
        let p = Self {
            alpha,
            eta,
            beta,
            beta_prime: 0.5 * beta,
            t0,
            theta: ProfileSpec::ThetaInvLog,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_beta_prime(mut self, beta_prime: f64) -> Result<Self> {
        self.beta_prime = beta_prime;
        self.validate()?;
        Ok(self)
    }

    pub fn with_theta(mut self, theta: ProfileSpec) -> Result<Self> {
        self.theta = theta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(LabError::InvalidArgument(m));
        if !(0.0..1.0).contains(&self.alpha) {
            return bad(format!("alpha = {} outside [0, 1)", self.alpha));
        }
        if !(self.eta > 0.0 && self.eta < 1.0 - self.alpha) {
            return bad(format!("eta = {} outside (0, 1 - alpha)", self.eta));
        }
        if self.alpha + self.eta + self.beta != 1.0 {
            return bad(format!("beta = {} is not 1 - alpha - eta", self.beta));
        }
        if !(self.beta_prime > 0.0 && self.beta_prime < self.beta) {
            return Err(LabError::InvalidSupport(format!(
                "beta' = {} outside (0, beta)",
                self.beta_prime
            )));
        }
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(LabError::InvalidTime(format!("t0 = {} must be positive", self.t0)));
        }
        Ok(())
    }

    pub fn theta_profile(&self) -> Result<DecayProfile> {
        DecayProfile::from_spec(&self.theta)
    }
}

fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        adaptive_simpson(|y| (-1.0 / (1.0 - y * y)).exp(), -1.0 + 1e-300, 1.0 - 1e-16, 1e-14, 1e-16)
            .expect("bump integrand is finite")
    })
}

/// `exp(-1/(1-y²))` with `y` the affine image of `[β', β]` on `[-1, 1]`,
/// normalized to unit integral.
pub fn bump_value(beta_prime: f64, beta: f64, x: f64) -> f64 {
    let half = 0.5 * (beta - beta_prime);
    let y = (x - 0.5 * (beta + beta_prime)) / half;
    if y.abs() >= 1.0 {
        return 0.0;
    }
    (-1.0 / (1.0 - y * y)).exp() / (half * bump_mass())
}

pub fn build_bump(beta_prime: f64, beta: f64, grid: Grid) -> Result<SampledFunction> {
    if !(beta_prime > 0.0 && beta_prime < beta && beta.is_finite()) {
        return Err(LabError::InvalidSupport(format!(
            "need 0 < beta' < beta, got [{beta_prime}, {beta}]"
        )));
    }
    SampledFunction::from_real_fn(grid, "h", |x| bump_value(beta_prime, beta, x))
}

/// `f(H) = (1/2t₀) e^{-i‖H‖_B²/4t₀} φ(|H|)^{-1} h(|H|/2t₀)`.
///
/// Both `h` and `φ` see `|H|` so that `f` is W-invariant; then
/// `g_f(H) = sign(H) (1/2t₀) h(|H|/2t₀)`.
pub fn build_initial_data(p: &CounterexampleParams, g: &GroupModel, grid: Grid) -> Result<SampledFunction> {
    p.validate()?;
    g.rank_one_rho()?;
    if !grid.is_symmetric() {
        return Err(LabError::WallSingularity(
            "initial data divides by φ; use a half-step grid symmetric about 0".into(),
        ));
    }
    let t0 = p.t0;
    let inner = 2.0 * t0 * p.beta_prime;
    let outer = 2.0 * t0 * p.beta;
    let first = 0.5 * grid.step();
    if inner < first {
        return Err(LabError::SupportTouchesZero(format!(
            "support starts at {inner}, inside the first node {first}"
        )));
    }
    if outer >= grid.radius() {
        return Err(LabError::GridTooSmall(format!(
            "support reaches {outer}, grid radius is {}",
            grid.radius()
        )));
    }
    let s2 = g.b_norm_scale * g.b_norm_scale;
    let f = SampledFunction::from_fn(grid, "f", |x| {
        let hv = bump_value(p.beta_prime, p.beta, x.abs() / (2.0 * t0));
        if hv == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(hv / (2.0 * t0 * phi_weight(g, &[x.abs()])), -s2 * x * x / (4.0 * t0))
    })?;
    if f.max_abs() == 0.0 {
        return Err(LabError::GridTooSmall("no grid node inside the support".into()));
    }
    Ok(f)
}

/// Odd `g = p(H - s) - p(H + s)` from the Ingham product with widths
/// `2t₀ a_k`, mapped back to `f = e^{-i‖H‖_B²/4t₀} g/φ`. The shift exceeds
/// the support radius of `p`, so `f` is smooth and compactly supported.
pub fn seeded_initial_data(g: &GroupModel, spec: &SincProductSpec, t0: f64, grid: Grid) -> Result<SampledFunction> {
    g.rank_one_rho()?;
    if !grid.is_symmetric() {
        return Err(LabError::WallSingularity("seeded data needs a half-step grid".into()));
    }
    let scaled = SincProductSpec::new(spec.a.iter().map(|a| 2.0 * t0 * a).collect())?;
    let r = scaled.support_radius;
    let shift = r + 0.25 * r.max(grid.step() * 8.0);
    if shift + r >= grid.radius() {
        return Err(LabError::GridTooSmall(format!(
            "seeded support reaches {}, grid radius is {}",
            shift + r,
            grid.radius()
        )));
    }
    let product = SincProduct::new(&scaled);
    let xi = grid.dual_frequencies();
    let ghat = xi
        .iter()
        .map(|&x| Complex64::new(0.0, -2.0 * (shift * x).sin()) * product.eval(x))
        .collect();
    let gg = inverse_fourier_transform(&SpectralFunction::new(xi, ghat)?, grid)?;
    let s2 = g.b_norm_scale * g.b_norm_scale;
    let mut f = gg.map_with_nodes("seeded_f", |x, v| {
        let v = if x.abs() < shift - r { Complex64::new(0.0, 0.0) } else { v };
        v * Complex64::from_polar(1.0 / phi_weight(g, &[x]), -s2 * x * x / (4.0 * t0))
    })?;
    // g is odd, so f is even; enforce it against rounding
    f = f.symmetrized()?;
    f.label = "seeded_f".into();
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Smallest node of the grid progression with `θ(s M₁) < η/4`.
    pub m1: f64,
    pub m2: f64,
    pub step: f64,
}

impl Thresholds {
    pub fn m(&self) -> f64 {
        self.m1.max(self.m2)
    }
}

/// Nodes `origin + k h` extended past the grid; returns the first one
/// satisfying `pred`, with `pred` monotone (false then true).
fn first_node_where(grid: &Grid, lower: f64, pred: impl Fn(f64) -> bool) -> Result<f64> {
    let h = grid.step();
    let o = grid.origin();
    let node = |k: f64| o + k * h;
    let mut lo = ((lower - o) / h).ceil().max(0.0);
    if pred(node(lo)) {
        return Ok(node(lo));
    }
    let mut hi = lo.max(1.0);
    while !pred(node(hi)) {
        hi *= 2.0;
        if hi > 1e18 {
            return Err(LabError::Profile("threshold beyond representable range".into()));
        }
    }
    while hi - lo > 1.0 {
        let mid = (0.5 * (lo + hi)).floor();
        if pred(node(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(node(hi))
}

/// `M₁`: `θ(‖H‖_B) < η/4` beyond it (REMARK42 only); `M₂ > 1`:
/// `e^{|H|} ≤ C sinh 2|H|` beyond it, both snapped to grid nodes.
pub fn compute_thresholds(p: &CounterexampleParams, g: &GroupModel, grid: &Grid, mode: EnvelopeMode) -> Result<Thresholds> {
    let rho = g.rank_one_rho()?;
    let s = g.b_norm_scale;
    let m2 = first_node_where(grid, 1.0 + 1e-12, |x| x > 1.0 && x <= ln_sinh(rho * x) + SINH_CONSTANT.ln())?;
    let m1 = match mode {
        EnvelopeMode::Remark42 => {
            let theta = p.theta_profile()?;
            let quarter = 0.25 * p.eta;
            first_node_where(grid, 1.0 + 1e-12, |x| {
                x > 1.0 && theta.evaluate(s * x).is_ok_and(|v| v < quarter)
            })?
        }
        EnvelopeMode::Remark451 => m2,
    };
    Ok(Thresholds {
        m1,
        m2,
        step: grid.step(),
    })
}

/// `ln sinh x` for `x > 0`, stable for large `x`.
fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln() - std::f64::consts::LN_2
}

/// `ln φ(H)` and `ln φ₀(H)` for rank one, `H ≠ 0`.
fn ln_phi(rho: f64, h: f64) -> f64 {
    std::f64::consts::LN_2 + ln_sinh(rho * h.abs())
}

fn ln_phi_zero(rho: f64, h: f64) -> f64 {
    (rho * h.abs()).ln() - ln_sinh(rho * h.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnvelopeMode {
    /// `decay = ‖H‖_B θ(‖H‖_B)`.
    #[serde(rename = "REMARK42")]
    Remark42,
    /// `decay = η|H|`.
    #[serde(rename = "REMARK451")]
    Remark451,
}

impl std::str::FromStr for EnvelopeMode {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "REMARK42" => Ok(Self::Remark42),
            "REMARK451" => Ok(Self::Remark451),
            _ => Err(LabError::InvalidArgument(format!("unknown envelope mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkCheck {
    pub name: String,
    /// Largest `ln(lhs) - ln(rhs)` on the net; `≤ 0` certifies the link.
    pub max_log_excess: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub from: f64,
    pub to: f64,
    pub samples: usize,
    pub links: Vec<LinkCheck>,
    pub holds: bool,
}

/// Checks, for `M < |H| ≤ 10³ M`, the links
/// `e^{-η|H|} ≤ e^{-decay}`, `e^{(1-α)|H|} ≤ |H|^α (C sinh 2|H|)^{1-α}` and
/// `|H|^α sinh^{1-α} 2|H| = 2^{-(1+α)} |φ| φ₀^α` (SL(2,ℂ) constants).
pub fn certify_chain(p: &CounterexampleParams, g: &GroupModel, t: &Thresholds, mode: EnvelopeMode) -> Result<ChainCertificate> {
    let rho = g.rank_one_rho()?;
    let s = g.b_norm_scale;
    let m = match mode {
        EnvelopeMode::Remark42 => t.m(),
        EnvelopeMode::Remark451 => t.m2,
    };
    let theta = p.theta_profile()?;
    let samples = 1024;
    let to = 1e3 * m;
    let a = p.alpha;
    let mut excess = [f64::NEG_INFINITY; 3];
    for i in 0..samples {
        let x = m * (to / m).powf((i + 1) as f64 / samples as f64);
        let decay_excess = match mode {
            EnvelopeMode::Remark42 => p.eta * x - s * x * theta.evaluate(s * x)?,
            EnvelopeMode::Remark451 => 0.0,
        };
        // ln e^{-η|H|} - ln e^{-decay}
        excess[0] = excess[0].max(-decay_excess);
        let lhs = (1.0 - a) * x;
        let rhs = a * x.ln() + (1.0 - a) * (SINH_CONSTANT.ln() + ln_sinh(rho * x));
        excess[1] = excess[1].max((lhs - rhs) / x);
        let left = a * x.ln() + (1.0 - a) * ln_sinh(rho * x);
        let right = -(1.0 + a) * std::f64::consts::LN_2 + ln_phi(rho, x) + a * ln_phi_zero(rho, x);
        excess[2] = excess[2].max((left - right).abs() / left.abs().max(1.0) - 1e-13);
    }
    let names = ["decay", "sinh", "identity"];
    let links: Vec<LinkCheck> = names
        .iter()
        .zip(excess)
        .map(|(n, e)| LinkCheck {
            name: n.to_string(),
            max_log_excess: e,
            holds: e <= 0.0,
        })
        .collect();
    Ok(ChainCertificate {
        from: m,
        to,
        samples,
        holds: links.iter().all(|l| l.holds),
        links,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeOptions {
    pub window_radius: f64,
    pub slack: f64,
    /// Exponent on `φ₀` in the target; defaults to `α`.
    pub envelope_alpha: Option<f64>,
    /// `|K| ‖g_f‖₁ ≥ sup |uφ|`, enabling the tail certificate.
    pub uphi_bound: Option<f64>,
}

impl Default for EnvelopeOptions {
    fn default() -> Self {
        Self {
            window_radius: DEFAULT_WINDOW_RADIUS,
            slack: DEFAULT_SLACK,
            envelope_alpha: None,
            uphi_bound: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCertificate {
    pub from: f64,
    pub to: f64,
    /// Largest `ln(bound · φ^{-1} φ₀^{-α} e^{decay})` on the tail net.
    pub max_log_ratio: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub mode: EnvelopeMode,
    pub envelope_alpha: f64,
    pub windows: Vec<WindowFit>,
    pub drift: f64,
    pub growth: Vec<f64>,
    pub slack: f64,
    pub thresholds: Thresholds,
    pub tail: Option<TailCertificate>,
    pub verdict: EnvelopeVerdict,
}

impl EnvelopeReport {
    pub fn holds(&self) -> bool {
        self.verdict == EnvelopeVerdict::Holds
    }
}

fn decay_at(mode: EnvelopeMode, p: &CounterexampleParams, theta: &DecayProfile, s: f64, x: f64) -> Result<f64> {
    Ok(match mode {
        EnvelopeMode::Remark42 => s * x.abs() * theta.evaluate(s * x.abs())?,
        EnvelopeMode::Remark451 => p.eta * x.abs(),
    })
}

/// Fits `C* = max |u| φ₀^{-α} e^{decay}` over dyadic windows of `|H|` and,
/// with a bound on `|uφ|`, certifies the tail out to `4 max(M, R)`.
/// HOLDS iff the drift is below the slack and the tail (if checked) stays
/// under the last window constant.
pub fn verify_envelope(
    p: &CounterexampleParams,
    g: &GroupModel,
    u: &SampledFunction,
    mode: EnvelopeMode,
    opts: &EnvelopeOptions,
) -> Result<EnvelopeReport> {
    p.validate()?;
    let rho = g.rank_one_rho()?;
    let s = g.b_norm_scale;
    let theta = p.theta_profile()?;
    let alpha = opts.envelope_alpha.unwrap_or(p.alpha);
    let r = opts.window_radius;
    let thresholds = compute_thresholds(p, g, &u.grid, mode)?;
    let needed = thresholds.m2.max(r);
    if u.grid.radius() < needed {
        return Err(LabError::WindowTooSmall(format!(
            "grid radius {} does not exceed max(M₂, R) = {needed}",
            u.grid.radius()
        )));
    }
    let mut points = Vec::with_capacity(u.grid.len());
    for (x, v) in u.nodes().into_iter().zip(&u.values) {
        if x == 0.0 || x.abs() > r {
            continue;
        }
        let m = v.norm();
        let lr = if m > 0.0 {
            m.ln() - alpha * ln_phi_zero(rho, x) + decay_at(mode, p, &theta, s, x)?
        } else {
            f64::NEG_INFINITY
        };
        points.push((x.abs(), lr));
    }
    let windows = fit_windows(&points, &dyadic_radii(r));
    let drift = relative_drift(&windows);
    let growth = growth_factors(&windows);
    let last = windows.last().and_then(|w| w.log_constant);
    let tail = match opts.uphi_bound {
        None => None,
        Some(b) => {
            let to = 4.0 * thresholds.m().max(r);
            let n = 4096;
            let mut worst = f64::NEG_INFINITY;
            if b > 0.0 {
                for i in 0..=n {
                    let x = r * (to / r).powf(i as f64 / n as f64);
                    let lr = b.ln() - ln_phi(rho, x) - alpha * ln_phi_zero(rho, x)
                        + decay_at(mode, p, &theta, s, x)?;
                    worst = worst.max(lr);
                }
            }
            let holds = match last {
                Some(c) => worst <= c,
                None => worst == f64::NEG_INFINITY,
            };
            Some(TailCertificate {
                from: r,
                to,
                max_log_ratio: worst,
                holds,
            })
        }
    };
    let stable = drift.abs() < opts.slack;
    let verdict = if stable && tail.as_ref().is_none_or(|t| t.holds) {
        EnvelopeVerdict::Holds
    } else {
        EnvelopeVerdict::Fails
    };
    Ok(EnvelopeReport {
        mode,
        envelope_alpha: alpha,
        windows,
        drift,
        growth,
        slack: opts.slack,
        thresholds,
        tail,
        verdict,
    })
}

/// Grid used by the pipelines: `[-64, 64]`, `2^16` half-step nodes.
pub fn default_counterexample_grid() -> Grid {
    Grid::symmetric(64.0, 1 << 16, true).expect("valid grid")
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleRun {
    pub params: CounterexampleParams,
    pub mode: EnvelopeMode,
    pub group: String,
    pub grid: Grid,
    pub propagator_constant: Complex64,
    pub uphi_bound: f64,
    pub chain: ChainCertificate,
    pub report: EnvelopeReport,
    /// Same data against the full-strength `α = 1` envelope.
    pub full_strength: EnvelopeReport,
    #[serde(skip)]
    pub initial_data: SampledFunction,
    #[serde(skip)]
    pub solution: SampledFunction,
}

/// Bound `|K| ‖g_f‖₁` on `|uφ|`.
pub fn uphi_bound(prop: &GroupPropagator, f: &SampledFunction) -> Result<f64> {
    let gf = modulated_profile(&prop.model, f, prop.t0)?;
    Ok(prop.prefactor().norm() * gf.l1_norm())
}

/// Builds `f`, evolves it with the calibrated closed form, and checks the
/// envelope at exponent `α` and at exponent 1.
pub fn run_counterexample(
    p: &CounterexampleParams,
    g: &GroupModel,
    grid: Grid,
    mode: EnvelopeMode,
    opts: &EnvelopeOptions,
) -> Result<CounterexampleRun> {
    let f = build_initial_data(p, g, grid)?;
    let prop = GroupPropagator::calibrate(g, p.t0)?;
    let u = prop.evolve(&f)?;
    let bound = uphi_bound(&prop, &f)?;
    let thresholds = compute_thresholds(p, g, &grid, mode)?;
    let chain = certify_chain(p, g, &thresholds, mode)?;
    let with_bound = EnvelopeOptions {
        uphi_bound: Some(bound),
        ..opts.clone()
    };
    let report = verify_envelope(p, g, &u, mode, &with_bound)?;
    let full = EnvelopeOptions {
        envelope_alpha: Some(1.0),
        ..with_bound
    };
    let full_strength = verify_envelope(p, g, &u, mode, &full)?;
    Ok(CounterexampleRun {
        params: p.clone(),
        mode,
        group: g.name.clone(),
        grid,
        propagator_constant: prop.constant,
        uphi_bound: bound,
        chain,
        report,
        full_strength,
        initial_data: f,
        solution: u,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub profile: String,
    pub ingham_verdict: Verdict,
    pub initial_data_l2: f64,
    pub envelope: EnvelopeReport,
    /// Every window-to-window growth factor exceeds 10.
    pub unbounded_growth: bool,
    /// False only when a divergent profile admits nonzero data under the
    /// full-strength envelope.
    pub consistent: bool,
}

/// Evolves `f` and tests `|u| ≤ C φ₀ e^{-‖H‖_B θ(‖H‖_B)}` on the grid
/// windows. For a divergent θ and nonzero `f` this must fail.
pub fn theorem_dichotomy_experiment(
    g: &GroupModel,
    theta: &ProfileSpec,
    f: &SampledFunction,
    t0: f64,
) -> Result<DichotomyReport> {
    let profile = DecayProfile::from_spec(theta)?;
    let diag = classify_integral(&profile, &default_schedule())?;
    let prop = GroupPropagator::calibrate(g, t0)?;
    let u = prop.evolve(f)?;
    // α and η only enter through the θ threshold, which the full-strength
    // envelope does not use beyond M₂.
    let p = CounterexampleParams::new(0.5, 0.25, t0)?.with_theta(theta.clone())?;
    // The generic tail bound |K|‖g_f‖₁ cannot beat the α = 1 weight, so the
    // verdict rests on the windows alone.
    let opts = EnvelopeOptions {
        envelope_alpha: Some(1.0),
        uphi_bound: None,
        ..EnvelopeOptions::default()
    };
    let envelope = verify_envelope(&p, g, &u, EnvelopeMode::Remark42, &opts)?;
    let unbounded_growth = !envelope.growth.is_empty() && envelope.growth.iter().all(|&x| x > DIVERGENCE_GROWTH);
    let l2 = crate::numerics::l2_norm(f);
    let consistent = !(diag.verdict == Verdict::LikelyDivergent && l2 > 0.0 && envelope.holds());
    Ok(DichotomyReport {
        profile: profile.name.clone(),
        ingham_verdict: diag.verdict,
        initial_data_l2: l2,
        envelope,
        unbounded_growth,
        consistent,
    })
}
