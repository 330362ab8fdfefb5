//! Experiment configuration: JSON file, then command-line overrides, then
//! per-subcommand defaults. Unknown fields are rejected.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use harmonic_lab::counterexample::EnvelopeMode;
use harmonic_lab::numerics::Grid;
use harmonic_lab::profiles::ProfileSpec;

pub const SCHEMA: &str = include_str!("../schema/experiment-config.schema.json");

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub subcommand: Option<String>,
    pub group: Option<String>,
    pub grid: Option<GridConfig>,
    pub profile: Option<ProfileSpec>,
    pub schrodinger: Option<SchrodingerConfig>,
    pub counterexample: Option<CounterexampleConfig>,
    pub initial: Option<InitialKind>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub points: Option<usize>,
    pub radius: Option<f64>,
    pub offset: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EvolveMode {
    Euclidean,
    Group,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchrodingerConfig {
    pub t0: Option<f64>,
    pub c: Option<f64>,
    pub mode: Option<EvolveMode>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleConfig {
    pub alpha: Option<f64>,
    pub eta: Option<f64>,
    pub beta_prime: Option<f64>,
    pub mode: Option<EnvelopeMode>,
    pub window_radius: Option<f64>,
    pub slack: Option<f64>,
    pub envelope_alpha: Option<f64>,
}

/// Initial data for transform, evolve and dichotomy runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    /// `e^{-H²}`.
    Gaussian,
    /// The counterexample data built from a bump.
    Remark42,
    /// Odd Ingham product mapped to a group profile (convergent θ only).
    Seeded,
    Zero,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).context("config does not match the schema")?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Range checks the JSON schema expresses but serde does not.
    pub fn validate(&self) -> Result<()> {
        if let Some(g) = &self.grid {
            if let Some(n) = g.points {
                if n < 16 {
                    bail!("grid.points must be at least 16, got {n}");
                }
            }
            if let Some(r) = g.radius {
                if !(r > 0.0 && r.is_finite()) {
                    bail!("grid.radius must be positive, got {r}");
                }
            }
        }
        if let Some(s) = &self.schrodinger {
            if let Some(t) = s.t0 {
                if !(t > 0.0 && t.is_finite()) {
                    bail!("schrodinger.t0 must be positive, got {t}");
                }
            }
        }
        if let Some(c) = &self.counterexample {
            for (name, v) in [("window_radius", c.window_radius), ("slack", c.slack)] {
                if let Some(v) = v {
                    if !(v > 0.0 && v.is_finite()) {
                        bail!("counterexample.{name} must be positive, got {v}");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fully resolved settings; this is what the manifest records and hashes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub subcommand: String,
    pub group: String,
    pub grid: Grid,
    pub profile: ProfileSpec,
    pub t0: f64,
    pub c: f64,
    pub evolve_mode: EvolveMode,
    pub alpha: f64,
    pub eta: f64,
    pub beta_prime: Option<f64>,
    pub envelope_mode: EnvelopeMode,
    pub window_radius: f64,
    pub slack: f64,
    pub envelope_alpha: Option<f64>,
    pub initial: InitialKind,
    pub seed: u64,
}

/// Defaults that differ between subcommands.
pub fn default_grid(subcommand: &str, mode: EvolveMode) -> (f64, usize, bool) {
    match (subcommand, mode) {
        ("transform", _) | ("evolve", EvolveMode::Group) => (16.0, 1 << 11, true),
        ("verify" | "counterexample" | "dichotomy", _) => (64.0, 1 << 16, true),
        _ => (64.0, 1 << 14, false),
    }
}

pub fn default_profile(subcommand: &str) -> ProfileSpec {
    match subcommand {
        "verify" | "counterexample" | "dichotomy" => ProfileSpec::ThetaInvLog,
        _ => ProfileSpec::ThetaInvLogSq,
    }
}
