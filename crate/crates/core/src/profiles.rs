//! Decay envelopes `ψ` (nondecreasing) and `θ` (decreasing to 0), their
//! Ingham integrals, and a heuristic convergence classifier.
//!
//! Integrals are taken in the variable `s = ln r`, so schedules reaching
//! `R = e^64` cost a few dozen unit panels.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::numerics::quadrature::adaptive_simpson;

pub const PANEL_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileKind {
    PsiNondecreasing,
    ThetaDecreasing,
}

/// Named built-in profiles, as referenced from experiment configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    /// `ψ(r) = r^a`, `0 < a ≤ 1`.
    PsiPower { exponent: f64 },
    /// `ψ(r) = η r`.
    PsiLinear {
        #[serde(default = "one")]
        slope: f64,
    },
    /// `ψ(r) = r / log(e + r)`.
    PsiOverLog,
    PsiZero,
    /// `θ(r) = 1 / log(e + r)`.
    ThetaInvLog,
    /// `θ(r) = log(e + r)^{-2}`.
    ThetaInvLogSq,
    ThetaZero,
    /// `θ = height` on `[0, cutoff]`, zero beyond.
    ThetaStep { cutoff: f64, height: f64 },
}

fn one() -> f64 {
    1.0
}

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

impl ProfileSpec {
    pub const NAMES: [&'static str; 7] = [
        "psi_power",
        "psi_linear",
        "psi_over_log",
        "psi_zero",
        "theta_inv_log",
        "theta_inv_log_sq",
        "theta_zero",
    ];

    /// Library entry with default parameters; `psi_sqrt` is `psi_power(0.5)`.
    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            "psi_power" | "psi_sqrt" => ProfileSpec::PsiPower { exponent: 0.5 },
            "psi_linear" => ProfileSpec::PsiLinear { slope: 1.0 },
            "psi_over_log" => ProfileSpec::PsiOverLog,
            "psi_zero" => ProfileSpec::PsiZero,
            "theta_inv_log" => ProfileSpec::ThetaInvLog,
            "theta_inv_log_sq" => ProfileSpec::ThetaInvLogSq,
            "theta_zero" => ProfileSpec::ThetaZero,
            other => {
                return Err(LabError::Profile(format!("unknown profile '{other}'")));
            }
        })
    }
}

/// A decay envelope: a stateless function handle plus its kind.
#[derive(Clone)]
pub struct DecayProfile {
    pub kind: ProfileKind,
    pub name: String,
    eval: Eval,
    /// `s -> profile(e^s)`, for arguments beyond f64 range.
    eval_log: Option<Eval>,
}

impl fmt::Debug for DecayProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecayProfile")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .finish()
    }
}

/// `ln(e + e^s)` without overflow.
fn log_e_plus_exp(s: f64) -> f64 {
    if s > 1.0 {
        s + (1.0 - s).exp().ln_1p()
    } else {
        1.0 + (s - 1.0).exp().ln_1p()
    }
}

impl DecayProfile {
    pub fn new<F>(kind: ProfileKind, name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind,
            name: name.into(),
            eval: Arc::new(eval),
            eval_log: None,
        }
    }

    pub fn with_log_eval<F>(mut self, eval_log: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.eval_log = Some(Arc::new(eval_log));
        self
    }

    pub fn from_spec(spec: &ProfileSpec) -> Result<Self> {
        use ProfileKind::*;
        Ok(match *spec {
            ProfileSpec::PsiPower { exponent: a } => {
                if !(a > 0.0 && a <= 1.0) {
                    return Err(LabError::InvalidArgument(format!(
                        "psi_power exponent must lie in (0, 1], got {a}"
                    )));
                }
                Self::new(PsiNondecreasing, format!("psi_power({a})"), move |r| r.powf(a))
                    .with_log_eval(move |s| (a * s).exp())
            }
            ProfileSpec::PsiLinear { slope } => {
                if !(slope > 0.0 && slope.is_finite()) {
                    return Err(LabError::InvalidArgument(format!(
                        "psi_linear slope must be positive, got {slope}"
                    )));
                }
                Self::new(PsiNondecreasing, format!("psi_linear({slope})"), move |r| slope * r)
                    .with_log_eval(move |s| slope * s.exp())
            }
            ProfileSpec::PsiOverLog => {
                Self::new(PsiNondecreasing, "psi_over_log", |r| r / (std::f64::consts::E + r).ln())
                    .with_log_eval(|s| s.exp() / log_e_plus_exp(s))
            }
            ProfileSpec::PsiZero => Self::new(PsiNondecreasing, "psi_zero", |_| 0.0),
            ProfileSpec::ThetaInvLog => {
                Self::new(ThetaDecreasing, "theta_inv_log", |r| 1.0 / (std::f64::consts::E + r).ln())
                    .with_log_eval(|s| 1.0 / log_e_plus_exp(s))
            }
            ProfileSpec::ThetaInvLogSq => Self::new(ThetaDecreasing, "theta_inv_log_sq", |r| {
                (std::f64::consts::E + r).ln().powi(-2)
            })
            .with_log_eval(|s| log_e_plus_exp(s).powi(-2)),
            ProfileSpec::ThetaZero => Self::new(ThetaDecreasing, "theta_zero", |_| 0.0),
            ProfileSpec::ThetaStep { cutoff, height } => {
                if !(cutoff > 0.0 && height >= 0.0) {
                    return Err(LabError::InvalidArgument(
                        "theta_step needs cutoff > 0 and height >= 0".into(),
                    ));
                }
                Self::new(ThetaDecreasing, format!("theta_step({cutoff},{height})"), move |r| {
                    if r <= cutoff {
                        height
                    } else {
                        0.0
                    }
                })
            }
        })
    }

    /// Library lookup by name with default parameters.
    pub fn by_name(name: &str) -> Result<Self> {
        Self::from_spec(&ProfileSpec::by_name(name)?)
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        check_value(&self.name, r, (self.eval)(r))
    }

    /// `profile(e^s)`.
    pub fn evaluate_log(&self, s: f64) -> Result<f64> {
        let v = match &self.eval_log {
            Some(g) => g(s),
            None => (self.eval)(s.exp()),
        };
        check_value(&self.name, s.exp(), v)
    }

    /// `c · profile` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        let eval = self.eval.clone();
        let eval_log = self.eval_log.clone();
        Self {
            kind: self.kind,
            name: format!("{c}*{}", self.name),
            eval: Arc::new(move |r| c * eval(r)),
            eval_log: eval_log.map(|g| Arc::new(move |s| c * g(s)) as Eval),
        }
    }

    /// `θ(r) = ψ(max(r,1)) / max(r,1)`, the decreasing profile whose dyadic
    /// sum tracks `∫ ψ(r)/r² dr`.
    pub fn theta_from_psi(psi: &DecayProfile) -> Self {
        let eval = psi.eval.clone();
        let log_psi = psi.clone();
        Self {
            kind: ProfileKind::ThetaDecreasing,
            name: format!("theta_from[{}]", psi.name),
            eval: Arc::new(move |r| {
                let r = r.max(1.0);
                eval(r) / r
            }),
            eval_log: Some(Arc::new(move |s| {
                let s = s.max(0.0);
                log_psi.evaluate_log(s).unwrap_or(f64::NAN) * (-s).exp()
            })),
        }
    }

    /// Spot-check monotonicity on a log-spaced net in `[1e-3, e^200]`, and
    /// for θ profiles the decay `θ(r_max) < θ(1)/10`.
    pub fn validate(&self) -> Result<()> {
        let net: Vec<f64> = (0..=400).map(|i| -7.0 + 207.0 * i as f64 / 400.0).collect();
        let vals = net
            .iter()
            .map(|&s| self.evaluate_log(s))
            .collect::<Result<Vec<_>>>()?;
        let tol = |a: f64| 1e-12 * a.abs().max(1.0);
        match self.kind {
            ProfileKind::PsiNondecreasing => {
                if let Some(w) = vals.windows(2).find(|w| w[1] < w[0] - tol(w[0])) {
                    return Err(LabError::Profile(format!(
                        "{} decreases: {} -> {}",
                        self.name, w[0], w[1]
                    )));
                }
            }
            ProfileKind::ThetaDecreasing => {
                if let Some(w) = vals.windows(2).find(|w| w[1] > w[0] + tol(w[0])) {
                    return Err(LabError::Profile(format!(
                        "{} increases: {} -> {}",
                        self.name, w[0], w[1]
                    )));
                }
                let at_one = self.evaluate(1.0)?;
                let far = *vals.last().expect("nonempty net");
                if !(far < at_one / 10.0 || far == 0.0) {
                    return Err(LabError::Profile(format!(
                        "{} does not decay to zero",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_value(name: &str, r: f64, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(LabError::Profile(format!("{name}({r}) = {v}")))
    }
}

/// Integrand in `s = ln r` over `[1, R]`.
fn log_integrand(p: &DecayProfile, s: f64) -> Result<f64> {
    let v = p.evaluate_log(s)?;
    Ok(match p.kind {
        // ψ(r)/(1+r²) dr = ψ(e^s) / (e^{-s} + e^s) ds
        ProfileKind::PsiNondecreasing => v / ((-s).exp() + s.exp()),
        // θ(r)/r dr = θ(e^s) ds
        ProfileKind::ThetaDecreasing => v,
    })
}

fn integrate_checked<F>(f: F, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure = std::cell::RefCell::new(None);
    let v = adaptive_simpson(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        PANEL_REL_TOL,
        1e-300,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(v.max(0.0))
}

/// `∫` over `[ln a, ln b]` in unit panels of `s`.
fn log_range_integral(p: &DecayProfile, a: f64, b: f64) -> Result<f64> {
    let (sa, sb) = (a.ln(), b.ln());
    let mut total = 0.0;
    let mut lo = sa;
    while lo < sb {
        let hi = (lo.floor() + 1.0).min(sb);
        total += integrate_checked(|s| log_integrand(p, s), lo, hi)?;
        lo = hi;
    }
    Ok(total)
}

/// The head of the integral below `r = 1` (ψ profiles only).
fn head_integral(p: &DecayProfile) -> Result<f64> {
    match p.kind {
        ProfileKind::PsiNondecreasing => {
            integrate_checked(|r| Ok(p.evaluate(r)? / (1.0 + r * r)), 0.0, 1.0)
        }
        ProfileKind::ThetaDecreasing => Ok(0.0),
    }
}

/// Partial Ingham integral up to `R`: `∫_0^R ψ(r)/(1+r²) dr` for ψ
/// profiles, `∫_1^R θ(r)/r dr` for θ profiles.
pub fn ingham_integral_partial(p: &DecayProfile, r_max: f64) -> Result<f64> {
    if !(r_max > 1.0) || !r_max.is_finite() {
        return Err(LabError::InvalidArgument(format!(
            "upper limit must exceed 1, got {r_max}"
        )));
    }
    Ok(head_integral(p)? + log_range_integral(p, 1.0, r_max)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    LikelyDivergent,
    LikelyConvergent,
    Inconclusive,
}

/// Evidence about `I = lim_R I(R)`. The verdict is a heuristic read of the
/// tail, never a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralDiagnostic {
    pub profile: String,
    pub kind: ProfileKind,
    pub schedule: Vec<f64>,
    pub partial_integrals: Vec<f64>,
    /// Slope of `ln(dI/dℓ)` against `ℓ = ln(1 + ln R)` over the last
    /// increments: about +1 for `ln R` growth, 0 for `ln ln R` growth,
    /// negative for convergent tails. `None` when the tail is exactly zero.
    pub tail_exponent: Option<f64>,
    pub verdict: Verdict,
    pub heuristic: bool,
    pub note: String,
}

pub const DIVERGENT_SLOPE: f64 = -0.25;
pub const CONVERGENT_SLOPE: f64 = -0.6;

/// `R = e^{2^i}` for `i = 0..=6`.
pub fn default_schedule() -> Vec<f64> {
    (0..=6).map(|i| (2f64.powi(i)).exp()).collect()
}

pub fn classify_integral(p: &DecayProfile, schedule: &[f64]) -> Result<IntegralDiagnostic> {
    if schedule.len() < 4 {
        return Err(LabError::InvalidArgument(format!(
            "schedule needs at least 4 radii, got {}",
            schedule.len()
        )));
    }
    if schedule[0] <= 1.0 || schedule.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(LabError::InvalidArgument(
            "schedule must be strictly increasing and above 1".into(),
        ));
    }
    let mut partials = Vec::with_capacity(schedule.len());
    let mut acc = ingham_integral_partial(p, schedule[0])?;
    partials.push(acc);
    for w in schedule.windows(2) {
        acc += log_range_integral(p, w[0], w[1])?;
        partials.push(acc);
    }

    let ell: Vec<f64> = schedule.iter().map(|r| r.ln().ln_1p()).collect();
    let n = schedule.len();
    let tail: Vec<(f64, f64)> = (n - 4..n - 1)
        .map(|i| {
            let rate = (partials[i + 1] - partials[i]) / (ell[i + 1] - ell[i]);
            (0.5 * (ell[i] + ell[i + 1]), rate)
        })
        .collect();
    let scale = partials[n - 1].abs().max(f64::MIN_POSITIVE);
    let positive: Vec<(f64, f64)> = tail
        .iter()
        .copied()
        .filter(|&(_, d)| d > 1e-14 * scale)
        .collect();

    let (tail_exponent, verdict, note) = if positive.len() < 2 {
        (
            None,
            Verdict::LikelyConvergent,
            "tail increments vanish; partial integrals are constant".to_string(),
        )
    } else {
        let slope = least_squares_slope(
            &positive.iter().map(|p| p.0).collect::<Vec<_>>(),
            &positive.iter().map(|p| p.1.ln()).collect::<Vec<_>>(),
        );
        let verdict = if slope > DIVERGENT_SLOPE {
            Verdict::LikelyDivergent
        } else if slope < CONVERGENT_SLOPE {
            Verdict::LikelyConvergent
        } else {
            Verdict::Inconclusive
        };
        (
            Some(slope),
            verdict,
            format!(
                "heuristic: tail exponent {slope:.3} against thresholds {DIVERGENT_SLOPE} / {CONVERGENT_SLOPE}"
            ),
        )
    };

    Ok(IntegralDiagnostic {
        profile: p.name.clone(),
        kind: p.kind,
        schedule: schedule.to_vec(),
        partial_integrals: partials,
        tail_exponent,
        verdict,
        heuristic: true,
        note,
    })
}

pub(crate) fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
