//! Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
//! 2 the configuration or invocation was invalid.

pub mod commands;
pub mod config;
pub mod report;

use crate::error::{Error, Result};
use clap::{Parser, Subcommand};
use config::{Format, Resolved, RunConfig};
use report::{write_json, SuiteReport};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "stafield", version, about = "Spacetime-algebra electromagnetics experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Built-in scenario; overrides the one named in --config.
    #[arg(long, global = true)]
    pub scenario: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel sampling.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Multiplies every tolerance.
    #[arg(long = "tolerance-scale", global = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// List catalog fields and their default parameters.
    Catalog,
    /// Sample the configured field on its grid.
    Sample,
    /// Run residual and invariant suites.
    Verify,
    /// Pointwise extensor report with summary statistics.
    Energy,
    /// Kirchhoff or aperture propagation with peak/front tracking.
    Propagate,
    /// Action, quantum potential and trajectories.
    Photon,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: Command,
    version: &'static str,
    format: Format,
    tolerance_scale: f64,
    threads: Option<usize>,
    config: &'a Resolved,
}

fn resolve(cli: &Cli) -> Result<Resolved> {
    let mut raw = match &cli.config {
        Some(p) => config::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = &cli.scenario {
        raw.scenario = s.clone();
    }
    if raw.scenario.is_empty() {
        return Err(Error::Config { path: "scenario".into(), message: "give --config or --scenario".into() });
    }
    raw.resolve()
}

fn run(cli: &Cli) -> Result<SuiteReport> {
    if !(cli.tolerance_scale > 0.0 && cli.tolerance_scale.is_finite()) {
        return Err(Error::Config { path: "--tolerance-scale".into(), message: "must be positive".into() });
    }
    let cfg = resolve(cli)?;
    let format = cli.format.or(cfg.output.format).unwrap_or_default();
    let out: PathBuf = cli.out.clone().or_else(|| cfg.output.dir.clone()).unwrap_or_else(|| PathBuf::from("stafield-out"));
    std::fs::create_dir_all(&out)?;
    let manifest =
        Manifest { command: cli.command, version: env!("CARGO_PKG_VERSION"), format, tolerance_scale: cli.tolerance_scale, threads: cli.threads, config: &cfg };
    write_json(&out.join("manifest.json"), &manifest)?;
    let ctx = commands::RunContext { config: &cfg, out: &out, format, tolerance_scale: cli.tolerance_scale };
    let report = match cli.command {
        Command::Catalog => unreachable!("handled before configuration"),
        Command::Sample => commands::sample(&ctx)?,
        Command::Verify => commands::verify(&ctx)?,
        Command::Energy => commands::energy(&ctx)?,
        Command::Propagate => commands::propagate(&ctx)?,
        Command::Photon => commands::photon(&ctx)?,
    };
    report.write(&out.join("report.json"))?;
    report.print();
    println!("outputs in {}", display(&out));
    Ok(report)
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn exit_code(result: Result<SuiteReport>) -> i32 {
    match result {
        Ok(r) if r.all_pass() => EXIT_PASS,
        Ok(_) => EXIT_FAIL,
        Err(e @ (Error::Config { .. } | Error::Argument(_))) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if cli.command == Command::Catalog {
        return match commands::catalog(cli.format.unwrap_or_default()) {
            Ok(()) => EXIT_PASS,
            Err(e) => exit_code(Err(e)),
        };
    }
    match cli.threads {
        Some(0) => exit_code(Err(Error::Config { path: "--threads".into(), message: "must be positive".into() })),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| exit_code(run(&cli))),
            Err(e) => exit_code(Err(Error::Argument(e.to_string()))),
        },
        None => exit_code(run(&cli)),
    }
}
