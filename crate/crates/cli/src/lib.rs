//! `hlab`: runs the harmonic-lab pipelines from the command line and writes
//! CSV/JSON artifacts plus a versioned manifest.

pub mod config;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;

use harmonic_lab::counterexample::{
    build_initial_data, run_counterexample, seeded_initial_data, theorem_dichotomy_experiment,
    CounterexampleParams, EnvelopeMode, EnvelopeOptions,
};
use harmonic_lab::envelope::EnvelopeVerdict;
use harmonic_lab::group::{
    spherical_transform_direct_at, spherical_transform_reduced, spherical_transform_reduced_at,
    GroupModel,
};
use harmonic_lab::ingham::{
    envelope_certificate, psi_of_theta, realize_function, spec_from_psi, spec_from_theta,
    support_leakage, SincProduct, CERTIFICATE_SLACK,
};
use harmonic_lab::numerics::io::{sampled_to_csv, spectral_to_csv, write_csv, write_json};
use harmonic_lab::numerics::{Grid, SampledFunction, SpectralFunction};
use harmonic_lab::profiles::{classify_integral, default_schedule, DecayProfile, ProfileKind, ProfileSpec};
use harmonic_lab::schrodinger::{
    evolve_euclidean_closed_form, evolve_group_spectral, evolve_spectral, pde_residual,
    GroupPropagator, ResidualMode, SchrodingerParams,
};
use harmonic_lab::Complex64;

use config::{default_grid, default_profile, EvolveMode, ExperimentConfig, InitialKind, Resolved};

pub const SCHEMA_VERSION: u32 = 1;
/// Exit status when `--expect-holds` meets a FAILS verdict.
pub const EXIT_FAILS: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "hlab", version, about = "Harmonic-analysis experiments on ℝ and SL(2,ℂ)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a compactly supported function with prescribed Fourier decay.
    Construct(RunArgs),
    /// Spherical transform of a bi-K-invariant profile, both paths.
    Transform(RunArgs),
    /// Schrödinger evolution: closed form against spectral, PDE residual.
    Evolve(RunArgs),
    /// Envelope verdict for the counterexample solution.
    Verify(RunArgs),
    /// Full counterexample pipeline with all artifacts.
    Counterexample(RunArgs),
    /// Full-strength envelope test for a profile and initial data.
    Dichotomy(RunArgs),
    /// Heuristic convergence verdict for a profile's Ingham integral.
    Classify(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// JSON experiment config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (default `out`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub grid_radius: Option<f64>,
    /// Exit with status 2 when the verdict is FAILS.
    #[arg(long)]
    pub expect_holds: bool,
    /// Seed for randomized test-set selection.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Profile by library name, e.g. `theta_inv_log`, `psi_linear`.
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub t0: Option<f64>,
    /// Envelope mode: REMARK42 or REMARK451.
    #[arg(long)]
    pub mode: Option<String>,
    /// Exponent on φ₀ in the verified envelope (default α).
    #[arg(long)]
    pub envelope_alpha: Option<f64>,
    #[arg(long, value_enum)]
    pub evolve_mode: Option<EvolveMode>,
    #[arg(long, value_enum)]
    pub initial: Option<InitialKind>,
}

impl Command {
    fn parts(&self) -> (&'static str, &RunArgs) {
        match self {
            Command::Construct(a) => ("construct", a),
            Command::Transform(a) => ("transform", a),
            Command::Evolve(a) => ("evolve", a),
            Command::Verify(a) => ("verify", a),
            Command::Counterexample(a) => ("counterexample", a),
            Command::Dichotomy(a) => ("dichotomy", a),
            Command::Classify(a) => ("classify", a),
        }
    }
}

/// Parses `argv` (program name first), runs, and returns the exit status.
pub fn run(argv: &[String]) -> u8 {
    if argv.len() <= 1 {
        let mut cmd = <Cli as clap::CommandFactory>::command();
        eprintln!("{}", cmd.render_help());
        return 1;
    }
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            let (_, args) = cli.command.parts();
            if args.expect_holds && outcome.verdict == Some(EnvelopeVerdict::Fails) {
                EXIT_FAILS
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

pub struct Outcome {
    pub summary: String,
    pub verdict: Option<EnvelopeVerdict>,
    pub out_dir: PathBuf,
}

/// Merges config file, flags and defaults.
pub fn resolve(sub: &str, args: &RunArgs) -> Result<(Resolved, PathBuf)> {
    let cfg = match &args.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = &cfg.subcommand {
        if s != sub {
            bail!("config is for subcommand {s:?}, invoked as {sub:?}");
        }
    }
    let sch = cfg.schrodinger.clone().unwrap_or_default();
    let ce = cfg.counterexample.clone().unwrap_or_default();
    let evolve_mode = args.evolve_mode.or(sch.mode).unwrap_or(EvolveMode::Euclidean);
    let (r0, n0, o0) = default_grid(sub, evolve_mode);
    let gc = cfg.grid.clone().unwrap_or_default();
    let radius = args.grid_radius.or(gc.radius).unwrap_or(r0);
    let points = args.grid_points.or(gc.points).unwrap_or(n0);
    let offset = gc.offset.unwrap_or(o0);
    if points < 16 {
        bail!("grid points must be at least 16");
    }
    let grid = Grid::symmetric(radius, points, offset)?;
    let profile = match &args.profile {
        Some(name) => ProfileSpec::by_name(name)?,
        None => cfg.profile.clone().unwrap_or_else(|| default_profile(sub)),
    };
    let envelope_mode = match &args.mode {
        Some(m) => m.parse()?,
        None => ce.mode.unwrap_or(EnvelopeMode::Remark42),
    };
    let initial = args.initial.or(cfg.initial).unwrap_or(match sub {
        "dichotomy" | "verify" | "counterexample" => InitialKind::Remark42,
        _ => InitialKind::Gaussian,
    });
    let resolved = Resolved {
        subcommand: sub.to_string(),
        group: args.group.clone().or(cfg.group.clone()).unwrap_or_else(|| "sl2c".into()),
        grid,
        profile,
        t0: args.t0.or(sch.t0).unwrap_or(1.0),
        c: sch.c.unwrap_or(0.0),
        evolve_mode,
        alpha: args.alpha.or(ce.alpha).unwrap_or(0.5),
        eta: args.eta.or(ce.eta).unwrap_or(0.25),
        beta_prime: ce.beta_prime,
        envelope_mode,
        window_radius: ce.window_radius.unwrap_or(harmonic_lab::counterexample::DEFAULT_WINDOW_RADIUS),
        slack: ce.slack.unwrap_or(harmonic_lab::counterexample::DEFAULT_SLACK),
        envelope_alpha: args.envelope_alpha.or(ce.envelope_alpha),
        initial,
        seed: args.seed.or(cfg.seed).unwrap_or(0),
    };
    let out = args
        .out
        .clone()
        .or(cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    Ok((resolved, out))
}

/// Manifest and artifact writer for one run.
struct Run {
    out: PathBuf,
    resolved: Resolved,
    tolerances: BTreeMap<String, f64>,
    verdicts: BTreeMap<String, Value>,
    metrics: BTreeMap<String, Value>,
    artifacts: Vec<String>,
}

impl Run {
    fn new(out: PathBuf, resolved: Resolved) -> Result<Self> {
        std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
        Ok(Self {
            out,
            resolved,
            tolerances: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            metrics: BTreeMap::new(),
            artifacts: Vec::new(),
        })
    }

    fn csv(&mut self, name: &str, contents: &str) -> Result<()> {
        write_csv(&self.out.join(name), contents)?;
        self.artifacts.push(name.to_string());
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        write_json(&self.out.join(name), value)?;
        self.artifacts.push(name.to_string());
        Ok(())
    }

    fn tol(&mut self, name: &str, v: f64) {
        self.tolerances.insert(name.into(), v);
    }

    fn verdict<T: Serialize>(&mut self, name: &str, v: T) {
        self.verdicts.insert(name.into(), serde_json::to_value(v).expect("serializable"));
    }

    fn metric(&mut self, name: &str, v: f64) {
        self.metrics.insert(name.into(), finite_or_null(v));
    }

    fn finish(mut self) -> Result<PathBuf> {
        let config = serde_json::to_value(&self.resolved)?;
        let hash = hex::encode(Sha256::digest(serde_json::to_vec(&config)?));
        self.artifacts.push("manifest.json".into());
        let manifest = json!({
            "schema_version": SCHEMA_VERSION,
            "tool": "hlab",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "subcommand": self.resolved.subcommand,
            "config": config,
            "config_hash": hash,
            "tolerances": self.tolerances,
            "metrics": self.metrics,
            "verdicts": self.verdicts,
            "artifacts": self.artifacts,
        });
        write_json(&self.out.join("manifest.json"), &manifest)?;
        Ok(self.out)
    }
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn verdict_name(v: EnvelopeVerdict) -> &'static str {
    match v {
        EnvelopeVerdict::Holds => "HOLDS",
        EnvelopeVerdict::Fails => "FAILS",
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    let (sub, args) = cmd.parts();
    let (resolved, out) = resolve(sub, args)?;
    match sub {
        "construct" => construct(resolved, out),
        "transform" => transform(resolved, out),
        "evolve" => evolve(resolved, out),
        "verify" => counterexample(resolved, out, false),
        "counterexample" => counterexample(resolved, out, true),
        "dichotomy" => dichotomy(resolved, out),
        "classify" => classify(resolved, out),
        other => Err(anyhow!("unknown subcommand {other}")),
    }
}

const CONSTRUCT_XI0: f64 = 50.0;
const SUPPORT_LEAK_TOL: f64 = 1e-6;

fn construct(r: Resolved, out: PathBuf) -> Result<Outcome> {
    let profile = DecayProfile::from_spec(&r.profile)?;
    let (spec, psi) = match profile.kind {
        ProfileKind::ThetaDecreasing => (spec_from_theta(&profile)?, psi_of_theta(&profile)),
        ProfileKind::PsiNondecreasing => (spec_from_psi(&profile)?, profile.clone()),
    };
    let mut run = Run::new(out, r.clone())?;
    run.json("spec.json", &spec)?;
    run.tol("support_leakage", SUPPORT_LEAK_TOL);
    run.tol("certificate_drift", harmonic_lab::ingham::CERTIFICATE_DRIFT);
    run.tol("certificate_slack", CERTIFICATE_SLACK);
    run.metric("support_radius", spec.support_radius);
    run.metric("factors", spec.len() as f64);
    if spec.trivial {
        run.verdict("construction", "TRIVIAL");
        let dir = run.finish()?;
        return Ok(Outcome {
            summary: format!("construct {}: trivial (zero envelope)", profile.name),
            verdict: None,
            out_dir: dir,
        });
    }
    let f = realize_function(&spec, r.grid)?;
    run.csv("f.csv", &sampled_to_csv(&f))?;
    let product = SincProduct::new(&spec);
    let xi = r.grid.dual_frequencies();
    let fhat: Vec<Complex64> = xi.iter().map(|&x| Complex64::new(product.eval(x), 0.0)).collect();
    run.csv("fhat.csv", &spectral_to_csv(&SpectralFunction::new(xi, fhat)?))?;
    let leak = support_leakage(&f, spec.support_radius);
    let cert = envelope_certificate(&spec, &psi, CONSTRUCT_XI0, CERTIFICATE_SLACK)?;
    run.json("certificate.json", &cert)?;
    run.metric("support_leakage", leak);
    run.metric("certificate_drift", cert.drift);
    let verdict = if cert.stable && leak <= SUPPORT_LEAK_TOL {
        EnvelopeVerdict::Holds
    } else {
        EnvelopeVerdict::Fails
    };
    run.verdict("envelope_certificate", verdict);
    let dir = run.finish()?;
    Ok(Outcome {
        summary: format!(
            "construct {}: support radius {:.10}, leakage {:.3e}, certificate {}",
            profile.name,
            spec.support_radius,
            leak,
            verdict_name(verdict)
        ),
        verdict: Some(verdict),
        out_dir: dir,
    })
}

fn initial_data(r: &Resolved, g: &GroupModel) -> Result<SampledFunction> {
    Ok(match r.initial {
        InitialKind::Gaussian => SampledFunction::from_real_fn(r.grid, "f", |x| (-x * x).exp())?,
        InitialKind::Zero => SampledFunction::zeros(r.grid, "f"),
        InitialKind::Remark42 => {
            let p = counterexample_params(r)?;
            build_initial_data(&p, g, r.grid)?
        }
        InitialKind::Seeded => {
            let theta = DecayProfile::from_spec(&r.profile)?;
            let spec = match theta.kind {
                ProfileKind::ThetaDecreasing => spec_from_theta(&theta)?,
                ProfileKind::PsiNondecreasing => spec_from_psi(&theta)?,
            };
            if spec.trivial {
                bail!("profile {} gives an empty product; nothing to seed", theta.name);
            }
            seeded_initial_data(g, &spec, r.t0, r.grid)?
        }
    })
}

const TWO_PATH_TOL: f64 = 1e-6;
const TWO_PATH_SAMPLES: usize = 16;

fn transform(r: Resolved, out: PathBuf) -> Result<Outcome> {
    let g = GroupModel::preset(&r.group)?;
    let f = initial_data(&r, &g)?;
    let ft = spherical_transform_reduced(&g, &f)?;
    // the oracle is O(N) per frequency: check a seeded random subset
    let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
    let lmax = 0.25 * ft.lambda_values.last().copied().unwrap_or(1.0);
    let mut lambdas: Vec<f64> = (0..TWO_PATH_SAMPLES).map(|_| rng.gen_range(-lmax..lmax)).collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    let direct = spherical_transform_direct_at(&g, &f, &lambdas)?;
    let reduced = spherical_transform_reduced_at(&g, &f, &lambdas)?;
    let scale = direct.max_abs().max(f64::MIN_POSITIVE);
    let err = direct
        .values
        .iter()
        .zip(&reduced.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale;
    let err = if direct.max_abs() == 0.0 && reduced.max_abs() == 0.0 { 0.0 } else { err };
    let w_defect = if ft.max_abs() > 0.0 { ft.w_defect() / ft.max_abs() } else { 0.0 };
    let mut run = Run::new(out, r)?;
    run.csv("f.csv", &sampled_to_csv(&f))?;
    run.csv("transform.csv", &spectral_to_csv(&ft.as_spectral()?))?;
    run.tol("two_path_relative", TWO_PATH_TOL);
    run.tol("w_invariance_relative", 1e-8);
    run.metric("two_path_relative", err);
    run.metric("w_defect_relative", w_defect);
    let verdict = if err <= TWO_PATH_TOL && w_defect <= 1e-8 {
        EnvelopeVerdict::Holds
    } else {
        EnvelopeVerdict::Fails
    };
    run.verdict("two_path_agreement", verdict);
    let dir = run.finish()?;
    Ok(Outcome {
        summary: format!(
            "transform: two-path error {err:.3e}, W-defect {w_defect:.3e}, {}",
            verdict_name(verdict)
        ),
        verdict: Some(verdict),
        out_dir: dir,
    })
}

fn evolve(r: Resolved, out: PathBuf) -> Result<Outcome> {
    let t0 = r.t0;
    let (closed, spectral, tol, residual, constant) = match r.evolve_mode {
        EvolveMode::Euclidean => {
            let p = SchrodingerParams::new(t0, r.c);
            let f = SampledFunction::from_real_fn(r.grid, "f", |x| (-x * x).exp())?;
            let f = if r.initial == InitialKind::Zero { SampledFunction::zeros(r.grid, "f") } else { f };
            let a = evolve_euclidean_closed_form(&p, &f)?;
            let b = evolve_spectral(&p, &f, t0)?;
            let d = r.grid.step();
            let slices = [evolve_spectral(&p, &f, t0 - d)?, b.clone(), evolve_spectral(&p, &f, t0 + d)?];
            let res = pde_residual([&slices[0], &slices[1], &slices[2]], &p, d, &ResidualMode::Euclidean)?;
            (a, b, 1e-6, res.residual, None)
        }
        EvolveMode::Group => {
            let g = GroupModel::preset(&r.group)?;
            let f = initial_data(&r, &g)?;
            let prop = GroupPropagator::calibrate(&g, t0)?;
            let a = prop.evolve(&f)?;
            let b = evolve_group_spectral(&g, &f, t0)?;
            let d = r.grid.step();
            let slices = [evolve_group_spectral(&g, &f, t0 - d)?, b.clone(), evolve_group_spectral(&g, &f, t0 + d)?];
            let p = SchrodingerParams::new(t0, g.rho_b_norm_sq());
            let res = pde_residual(
                [&slices[0], &slices[1], &slices[2]],
                &p,
                d,
                &ResidualMode::Group { model: g.clone() },
            )?;
            (a, b, 1e-5, res.residual, Some(prop.constant))
        }
    };
    let err = closed.max_relative_diff(&spectral);
    let mut run = Run::new(out, r)?;
    run.csv("u_closed_form.csv", &sampled_to_csv(&closed))?;
    run.csv("u_spectral.csv", &sampled_to_csv(&spectral))?;
    run.tol("closed_vs_spectral", tol);
    run.metric("closed_vs_spectral", err);
    run.metric("pde_residual", residual);
    if let Some(c) = constant {
        run.metric("calibrated_constant_re", c.re);
        run.metric("calibrated_constant_im", c.im);
    }
    let verdict = if err <= tol { EnvelopeVerdict::Holds } else { EnvelopeVerdict::Fails };
    run.verdict("closed_vs_spectral", verdict);
    let dir = run.finish()?;
    Ok(Outcome {
        summary: format!(
            "evolve: closed form vs spectral {err:.3e}, residual {residual:.3e}, {}",
            verdict_name(verdict)
        ),
        verdict: Some(verdict),
        out_dir: dir,
    })
}

fn counterexample_params(r: &Resolved) -> Result<CounterexampleParams> {
    let mut p = CounterexampleParams::new(r.alpha, r.eta, r.t0)?;
    if let Some(b) = r.beta_prime {
        p = p.with_beta_prime(b)?;
    }
    if matches!(r.profile, ProfileSpec::PsiPower { .. } | ProfileSpec::PsiLinear { .. } | ProfileSpec::PsiOverLog | ProfileSpec::PsiZero) {
        bail!("the counterexample envelope needs a decreasing θ profile");
    }
    p.with_theta(r.profile.clone()).map_err(Into::into)
}

fn counterexample(r: Resolved, out: PathBuf, full: bool) -> Result<Outcome> {
    let g = GroupModel::preset(&r.group)?;
    let p = counterexample_params(&r)?;
    let opts = EnvelopeOptions {
        window_radius: r.window_radius,
        slack: r.slack,
        envelope_alpha: None,
        uphi_bound: None,
    };
    let run_ce = run_counterexample(&p, &g, r.grid, r.envelope_mode, &opts)?;
    let report = match r.envelope_alpha {
        Some(a) if (a - 1.0).abs() < f64::EPSILON => run_ce.full_strength.clone(),
        Some(a) => {
            let o = EnvelopeOptions {
                envelope_alpha: Some(a),
                uphi_bound: Some(run_ce.uphi_bound),
                ..opts
            };
            harmonic_lab::counterexample::verify_envelope(&p, &g, &run_ce.solution, r.envelope_mode, &o)?
        }
        None => run_ce.report.clone(),
    };
    let mut run = Run::new(out, r.clone())?;
    run.tol("window_drift", r.slack);
    run.json("report.json", &report)?;
    if full {
        run.csv("f.csv", &sampled_to_csv(&run_ce.initial_data))?;
        run.csv("u.csv", &sampled_to_csv(&run_ce.solution))?;
        run.json("run.json", &run_ce)?;
    }
    run.metric("drift", report.drift);
    run.metric("threshold_m", report.thresholds.m());
    run.verdict("envelope", report.verdict);
    run.verdict("full_strength_envelope", run_ce.full_strength.verdict);
    run.verdict("chain", run_ce.chain.holds);
    let dir = run.finish()?;
    let c_star = report.windows.last().map_or(0.0, |w| w.constant);
    Ok(Outcome {
        summary: format!(
            "{}: {:?} envelope with phi0^{} {} (C* = {c_star:.6e}, drift {:.3e}); alpha = 1: {}",
            if full { "counterexample" } else { "verify" },
            report.mode,
            report.envelope_alpha,
            verdict_name(report.verdict),
            report.drift,
            verdict_name(run_ce.full_strength.verdict)
        ),
        verdict: Some(report.verdict),
        out_dir: dir,
    })
}

fn dichotomy(r: Resolved, out: PathBuf) -> Result<Outcome> {
    let g = GroupModel::preset(&r.group)?;
    let f = initial_data(&r, &g)?;
    let report = theorem_dichotomy_experiment(&g, &r.profile, &f, r.t0)?;
    let mut run = Run::new(out, r)?;
    run.csv("f.csv", &sampled_to_csv(&f))?;
    run.json("report.json", &report)?;
    run.tol("window_drift", report.envelope.slack);
    run.tol("divergence_growth", harmonic_lab::counterexample::DIVERGENCE_GROWTH);
    run.metric("drift", report.envelope.drift);
    run.verdict("envelope", report.envelope.verdict);
    run.verdict("ingham", report.ingham_verdict);
    run.verdict("consistent", report.consistent);
    let dir = run.finish()?;
    Ok(Outcome {
        summary: format!(
            "dichotomy {}: Ingham {:?}, full-strength envelope {}, growth {:?}, consistent {}",
            report.profile,
            report.ingham_verdict,
            verdict_name(report.envelope.verdict),
            report.envelope.growth,
            report.consistent
        ),
        verdict: Some(report.envelope.verdict),
        out_dir: dir,
    })
}

fn classify(r: Resolved, out: PathBuf) -> Result<Outcome> {
    let profile = DecayProfile::from_spec(&r.profile)?;
    let diag = classify_integral(&profile, &default_schedule())?;
    let mut run = Run::new(out, r)?;
    run.json("diagnostic.json", &diag)?;
    run.tol("divergent_slope", harmonic_lab::profiles::DIVERGENT_SLOPE);
    run.tol("convergent_slope", harmonic_lab::profiles::CONVERGENT_SLOPE);
    if let Some(s) = diag.tail_exponent {
        run.metric("tail_exponent", s);
    }
    run.verdict("ingham", diag.verdict);
    let dir = run.finish()?;
    let label = serde_json::to_value(diag.verdict)?;
    Ok(Outcome {
        summary: format!(
            "classify {}: {} (heuristic)",
            profile.name,
            label.as_str().unwrap_or("?")
        ),
        verdict: None,
        out_dir: dir,
    })
}

/// Names of the top-level config fields, as published in the schema.
pub fn schema_properties() -> Result<Vec<String>> {
    let v: Value = serde_json::from_str(config::SCHEMA)?;
    let props = v["properties"].as_object().ok_or_else(|| anyhow!("schema has no properties"))?;
    Ok(props.keys().cloned().collect())
}

/// Convenience for tests: `run` on string slices.
pub fn run_args(args: &[&str]) -> u8 {
    let argv: Vec<String> = std::iter::once("hlab").chain(args.iter().copied()).map(String::from).collect();
    run(&argv)
}
