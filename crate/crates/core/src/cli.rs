//! Command-line front end: parses arguments, runs checks, writes reports.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cauchy::{knorm_bracket, TestFunctionFamily};
use crate::config::{CheckKind, CheckSpec, ExperimentConfig};
use crate::error::{Error, Result};
use crate::geometry::ConformalDomain;
use crate::multiplier::{havin_lambda, theorem1_check, theorem2_check, vinogradov_probe};
use crate::report::{CheckRecord, Comparison, RunReport, Verdict};
use crate::verify::{self, Manifest};

#[derive(Debug, Parser)]
#[command(name = "csmult", version, about = "Cauchy–Stieltjes multiplier toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Experiment config (JSON). Defaults to the shipped config.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for report.json and summary.csv.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Replaces the ζ grid and the pairing grid size.
    #[arg(long, global = true)]
    pub n_override: Option<usize>,
    /// Suppress the per-check summary on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boundary length, chord-arc constant and univalence diagnostics.
    DomainInfo,
    /// Havin functional of a configured function.
    Lambda { function: String },
    /// K-norm bracket of a configured measure.
    Knorm { measure: String },
    /// Best multiplier-norm lower bound for a function.
    MultBound { function: String },
    /// First multiplier criterion.
    Theorem1 { function: String },
    /// Smooth-curve criterion with exponent p.
    Theorem2 {
        function: String,
        #[arg(long)]
        p: f64,
    },
    /// Collects Λ and the H¹ norm of f' on the disc; asserts nothing.
    Vinogradov { function: String },
    /// Runs the acceptance suite against the shipped manifest.
    Verify {
        /// Alternative manifest file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Runs the config's check list.
    Batch,
}

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Parses `args`, runs, and returns the exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    init_threads();
    match run(&cli) {
        Ok(report) => {
            if report.any_failed() {
                EXIT_FAIL
            } else {
                EXIT_OK
            }
        }
        Err(e @ (Error::Config(_) | Error::DegenerateMap | Error::DerivativeVanishes { .. } | Error::SelfIntersection { .. })) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("CSMULT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn load_config(global: &GlobalArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &global.config {
        Some(path) => ExperimentConfig::from_path(path)?,
        None => ExperimentConfig::shipped_default(),
    };
    if let Some(n) = global.n_override {
        if n < 64 {
            return Err(Error::Config(format!("--n-override {n} is below 64")));
        }
        cfg.override_n(n);
    }
    Ok(cfg)
}

/// Runs the parsed command and writes its reports.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let global = &cli.global;
    let report = match &cli.command {
        Command::Verify { manifest } => {
            let manifest = match manifest {
                Some(p) => Manifest::from_json(&std::fs::read_to_string(p)?)?,
                None => Manifest::shipped(),
            };
            let checks = verify::run(&manifest).into_iter().flat_map(|(_, r)| r).collect();
            RunReport { config: json!({ "manifest": "verify", "seed": manifest.seed }), checks }
        }
        cmd => {
            let cfg = load_config(global)?;
            let domain = cfg.build_domain()?;
            let plan = match cmd {
                Command::Batch => cfg.plan(),
                Command::DomainInfo => vec![single(CheckKind::DomainInfo, "", None)],
                Command::Lambda { function } => vec![single(CheckKind::Lambda, function, None)],
                Command::Knorm { measure } => vec![single(CheckKind::Knorm, measure, None)],
                Command::MultBound { function } => vec![single(CheckKind::MultBound, function, None)],
                Command::Theorem1 { function } => vec![single(CheckKind::Theorem1, function, None)],
                Command::Theorem2 { function, p } => vec![single(CheckKind::Theorem2, function, Some(*p))],
                Command::Vinogradov { function } => vec![single(CheckKind::Vinogradov, function, None)],
                Command::Verify { .. } => unreachable!(),
            };
            if !matches!(cmd, Command::Batch) {
                // single checks may name things the config's plan does not
                let mut probe = cfg.clone();
                probe.checks = Some(plan.clone());
                probe.validate()?;
            }
            let checks = plan.iter().map(|spec| run_check(&cfg, &domain, spec)).collect();
            RunReport { config: serde_json::to_value(&cfg)?, checks }
        }
    };
    let dir = global
        .out
        .clone()
        .or_else(|| load_config(global).ok().and_then(|c| c.output.dir.map(PathBuf::from)))
        .unwrap_or_else(|| PathBuf::from("csmult-out"));
    std::fs::create_dir_all(&dir)?;
    report.write_json(&dir.join("report.json"))?;
    report.write_csv(&dir.join("summary.csv"))?;
    if !global.quiet {
        for c in &report.checks {
            println!("{:<12} {:<28} {:>22} {}", c.check, c.name, format!("{:.12e}", c.value), c.verdict.as_str());
        }
    }
    Ok(report)
}

fn single(check: CheckKind, target: &str, p: Option<f64>) -> CheckSpec {
    CheckSpec { check, target: target.to_string(), p, expected: None, tol: None }
}

/// Runs one check; errors become failing records.
pub fn run_check(cfg: &ExperimentConfig, domain: &ConformalDomain, spec: &CheckSpec) -> CheckRecord {
    let start = Instant::now();
    let name = if spec.check == CheckKind::DomainInfo { "domain".to_string() } else { spec.target.clone() };
    let mut rec = match evaluate(cfg, domain, spec) {
        Ok((value, verdict, details)) => {
            let mut r = match (spec.expected, verdict) {
                (Some(e), Verdict::NotAsserted) => {
                    let mut r = CheckRecord::new(spec.check.as_str(), &name, value, Verdict::NotAsserted);
                    r.expected = Some(e);
                    r.tol = spec.tol;
                    r
                }
                (Some(e), v) => {
                    let mut r = CheckRecord::compared(spec.check.as_str(), &name, value, Comparison::Eq, e, spec.tol.unwrap_or(cfg.tolerances.theorem));
                    if v == Verdict::Fail {
                        r.verdict = Verdict::Fail;
                    }
                    r
                }
                (None, v) => CheckRecord::new(spec.check.as_str(), &name, value, v),
            };
            r.details = details;
            r
        }
        Err(e) => CheckRecord::failed(spec.check.as_str(), &name, e),
    };
    rec.wall_time_ms = start.elapsed().as_millis() as u64;
    rec
}

fn evaluate(cfg: &ExperimentConfig, domain: &ConformalDomain, spec: &CheckSpec) -> Result<(f64, Verdict, serde_json::Value)> {
    Ok(match spec.check {
        CheckKind::DomainInfo => {
            let d = domain.diagnostics();
            (d.s0, Verdict::Pass, value(&d)?)
        }
        CheckKind::Lambda => {
            let r = havin_lambda(domain, &cfg.function(&spec.target)?, &cfg.lambda_config())?;
            (r.lambda, Verdict::from_bool(r.converged), value(&r)?)
        }
        CheckKind::Knorm => {
            let mu = cfg.measure(domain, &spec.target)?;
            let family = TestFunctionFamily::generate(domain, &cfg.family)?;
            let r = knorm_bracket(domain, &mu, &family, &cfg.bracket_config())?;
            (r.lower, Verdict::Pass, value(&r)?)
        }
        CheckKind::MultBound => {
            let f = cfg.function(&spec.target)?;
            let extra = measures(cfg, domain)?;
            let r = crate::multiplier::search_lower_bound(domain, &f, &extra, &cfg.search_config())?;
            (r.value, Verdict::Pass, value(&r)?)
        }
        CheckKind::Theorem1 => {
            let f = cfg.function(&spec.target)?;
            let extra = measures(cfg, domain)?;
            let r = theorem1_check(domain, &f, &extra, &cfg.search_config())?;
            (r.slack, Verdict::from_bool(r.lambda_converged && r.slack >= -cfg.tolerances.theorem), value(&r)?)
        }
        CheckKind::Theorem2 => {
            let p = spec.p.ok_or_else(|| Error::Config("theorem2 needs p".into()))?;
            let r = theorem2_check(domain, &cfg.function(&spec.target)?, p, &cfg.theorem2_config())?;
            (r.bound - r.lambda, Verdict::from_bool(r.satisfied), value(&r)?)
        }
        CheckKind::Vinogradov => {
            let r = vinogradov_probe(domain, &cfg.function(&spec.target)?, &cfg.grids.vinogradov, &cfg.lambda_config())?;
            (r.lambda, Verdict::NotAsserted, value(&r)?)
        }
    })
}

fn value<T: serde::Serialize>(v: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(v)?)
}

fn measures(cfg: &ExperimentConfig, domain: &ConformalDomain) -> Result<Vec<(String, crate::cauchy::BoundaryMeasure)>> {
    cfg.measures
        .keys()
        .map(|name| Ok((name.clone(), cfg.measure(domain, name)?)))
        .filter(|m: &Result<(String, crate::cauchy::BoundaryMeasure)>| m.as_ref().map_or(true, |(_, mu)| mu.total_variation() > 0.0))
        .collect()
}
