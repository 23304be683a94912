use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tracecode::cache::{cache_path, enumerate_cached, CacheStatus};
use tracecode::report::{verify, VerifyConfig};
use tracecode::{CodeSpec, Error};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

/// Trace codes over F2 + uF2: parameters, weight enumeration, verification.
#[derive(Parser)]
#[command(name = "tracecode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the code parameters.
    Params(FieldArgs),
    /// Enumerate the weight distribution of the binary image.
    Enumerate {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every check and write the JSON report.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Largest Lee weight for the dual search (default: largest feasible).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        max_lee: Option<u32>,
        /// Random trials for the symmetry and sharing checks.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Refuse even m instead of skipping the odd-only checks.
        #[arg(long)]
        theorem: bool,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Extension degree.
    #[arg(long)]
    m: u32,
    /// Reduction polynomial as a bitmask, e.g. 0xb.
    #[arg(long, value_parser = parse_poly)]
    poly: Option<u32>,
    /// Write JSON here instead of standard output.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Directory for cached weight distributions.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

fn parse_poly(s: &str) -> Result<u32, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid polynomial {s:?}: {e}"))
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::InvalidDegree(_)
        | Error::InvalidPolynomial { .. }
        | Error::UnsupportedParameter(_)
        | Error::ElementOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_VERIFY_FAILED,
    }
}

fn spec_for(field: &FieldArgs) -> Result<CodeSpec, Error> {
    let mut config = VerifyConfig::new(field.m);
    config.poly = field.poly;
    Ok(CodeSpec::new(config.field_params()?))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Params(field) => {
            let spec = spec_for(&field)?;
            emit(&json!(spec.params()), field.json_out.as_deref())?;
            Ok(0)
        }
        Command::Enumerate { field, run } => {
            let spec = spec_for(&field)?;
            let dir = run.cache_dir.as_deref();
            let (dist, status) = enumerate_cached(&spec, run.threads as usize, dir)?;
            if let Some(dir) = dir {
                let path = cache_path(dir, spec.field_params());
                match status {
                    CacheStatus::Hit => eprintln!("cache hit: {}", path.display()),
                    CacheStatus::Computed => eprintln!("cache stored: {}", path.display()),
                }
            }
            let value = json!({
                "spec": spec.params(),
                "distribution": dist,
                "nonzero_weights": dist.nonzero_support(),
                "min_distance": dist.min_nonzero_weight(),
            });
            emit(&value, field.json_out.as_deref())?;
            Ok(0)
        }
        Command::Verify {
            field,
            run,
            max_lee,
            trials,
            seed,
            theorem,
        } => {
            let config = VerifyConfig {
                m: field.m,
                poly: field.poly,
                threads: run.threads as usize,
                max_lee,
                trials,
                seed,
                cache_dir: run.cache_dir,
                require_odd: theorem,
            };
            let outcome = verify(&config)?;
            if config.cache_dir.is_some() {
                let label = match outcome.cache_status {
                    CacheStatus::Hit => "hit",
                    CacheStatus::Computed => "stored",
                };
                eprintln!("cache {label}");
            }
            let report = &outcome.report;
            emit(&json!(report), field.json_out.as_deref())?;
            for f in &report.findings {
                eprintln!("finding [{}]: {}", f.id, f.summary);
            }
            let failures = report.failures();
            for c in &failures {
                eprintln!("FAILED {}: {}", c.name, c.detail);
            }
            let total = report.checks().count();
            eprintln!(
                "{} of {total} checks passed, {} findings",
                total - failures.len(),
                report.findings.len()
            );
            Ok(if failures.is_empty() {
                0
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
