//! Batch scenario runner for the inversion engine: parses SI-unit configs,
//! nondimensionalizes, evaluates densities, fields and trajectories, runs
//! the verification suite and writes hashed CSV/JSON artifacts.

mod config;
mod emit;

use clap::{Parser, Subcommand};
use rdi_core::scenario::{Scenario, Tolerances};
use rdi_core::RdiError;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rdi",
    about = "Relativistic dynamical inversion scenarios: run, verify, inspect",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario config: evaluate grids and trajectories, verify every
    /// law, write CSV/JSON artifacts with a hashed manifest.
    Run {
        /// Path to the TOML configuration.
        config: PathBuf,
        /// Output directory (overrides config and RDI_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Verification grid override, e.g. 7x7x7.
        #[arg(long)]
        grid: Option<String>,
        /// Per-law tolerance overrides, e.g. --tol dirac_residual=1e-9.
        #[arg(long = "tol")]
        tolerances: Vec<String>,
        /// Seed for the randomized inversion property sweep.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Verify a registered scenario by name and print the report.
    Verify {
        scenario: String,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long = "tol")]
        tolerances: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the registered scenario names.
    ListScenarios,
    /// Print the configuration schema, CSV schemas and exit-code contract.
    Schema,
}

/// Error kinds mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: configuration or validation failure.
    Config(String),
    /// Exit 1: a physics computation failed.
    Physics(String),
    /// Exit 3: filesystem failure.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Physics(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Physics(_) => "physics",
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Physics(m) | CliError::Io(m) => m,
        }
    }

    /// Errors raised while validating inputs count as configuration errors.
    pub fn from_validation(e: RdiError) -> Self {
        CliError::Config(e.to_string())
    }

    /// Errors raised during evaluation: integrator-setup problems are still
    /// configuration failures; everything else is a physics failure.
    pub fn from_physics(e: RdiError) -> Self {
        match e {
            RdiError::Configuration(_) => CliError::Config(e.to_string()),
            other => CliError::Physics(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    kind: &'a str,
    exit_code: u8,
}

/// Best-effort line to stdout: a closed pipe downstream must not abort a
/// run whose artifacts are already on disk.
fn out_line(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let json = serde_json::to_string(&ErrorJson {
                error: e.message(),
                kind: e.kind(),
                exit_code: e.exit_code(),
            })
            .unwrap_or_else(|_| format!("{{\"error\":\"{}\"}}", e.message()));
            let _ = writeln!(std::io::stderr(), "{json}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Run { config, out, grid, tolerances, seed } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Io(format!("{}: {e}", config.display())))?;
            let mut cfg = config::parse(&text)?;
            apply_tolerance_flags(&mut cfg.tolerances, &tolerances)?;
            let mut resolved = config::resolve(&cfg)?;
            if let Some(g) = grid {
                let (nt, nx, ny) = parse_grid(&g)?;
                resolved.grid.nt = nt;
                resolved.grid.nx = nx;
                resolved.grid.ny = ny;
            }
            let out_dir = out
                .or_else(|| std::env::var_os("RDI_OUT_DIR").map(PathBuf::from))
                .or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("out"));
            let (bundle, report) = emit::run_bundle(&resolved, &out_dir, seed)?;
            out_line(&format!(
                "{}: {} laws, {} -> {}",
                report.scenario,
                report.laws.len(),
                if report.all_pass() { "PASS" } else { "FAIL" },
                bundle.dir.display()
            ));
            for law in &report.laws {
                out_line(&format!(
                    "  {:<24} max {:>12.3e}  tol {:>8.1e}  {}",
                    law.law,
                    law.max_residual,
                    law.tolerance,
                    if law.pass { "pass" } else { "FAIL" }
                ));
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Verify { scenario, grid, tolerances, seed } => {
            let s = Scenario::by_name(&scenario).map_err(CliError::from_validation)?;
            let mut g = s.default_grid();
            if let Some(spec) = grid {
                let (nt, nx, ny) = parse_grid(&spec)?;
                g.nt = nt;
                g.nx = nx;
                g.ny = ny;
            }
            let mut tols = Tolerances::default();
            apply_tolerance_flags(&mut tols.overrides, &tolerances)?;
            let mut report = s.verify(&g, &tols).map_err(CliError::from_physics)?;
            if let Some(seed) = seed {
                report.laws.push(
                    s.random_inversion_sweep(seed, 100)
                        .map_err(CliError::from_physics)?,
                );
            }
            out_line(
                &serde_json::to_string_pretty(&report)
                    .map_err(|e| CliError::Io(e.to_string()))?,
            );
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::ListScenarios => {
            for name in Scenario::names() {
                out_line(name);
            }
            Ok(0)
        }
        Command::Schema => {
            let _ = write!(std::io::stdout(), "{}", config::SCHEMA);
            Ok(0)
        }
    }
}

fn parse_grid(spec: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<_> = spec.split('x').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "grid must look like NTxNXxNY, got {spec:?}"
        )));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::Config(format!("bad grid dimension {s:?}")))
            .and_then(|n| {
                if n == 0 {
                    Err(CliError::Config("grid dimensions must be positive".into()))
                } else {
                    Ok(n)
                }
            })
    };
    Ok((parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
}

fn apply_tolerance_flags(
    map: &mut std::collections::BTreeMap<String, f64>,
    flags: &[String],
) -> Result<(), CliError> {
    for flag in flags {
        let (law, value) = flag.split_once('=').ok_or_else(|| {
            CliError::Config(format!("--tol expects law=value, got {flag:?}"))
        })?;
        let v: f64 = value
            .parse()
            .map_err(|_| CliError::Config(format!("bad tolerance value {value:?}")))?;
        // NaN-rejecting guard
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(v > 0.0) {
            return Err(CliError::Config(format!(
                "tolerance for {law} must be positive"
            )));
        }
        map.insert(law.to_string(), v);
    }
    Ok(())
}
