use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ectk::commands::{self, ClassSpec};
use ectk::config::{FileConfig, FlagOverrides, Format, RunConfig};
use ectk::output::render;
use ectk::verify::{self, Suite};
use ectk::{exit_code, EXIT_CHECK_FAILED};
use ectk_core::{Error, Result};
use serde_json::{json, Value};

/// Exact counts, generating polynomials and self-checks for eventually
/// constant and eventually cyclic k-tuples of functions.
#[derive(Parser, Debug)]
#[command(name = "ectk", version)]
struct Cli {
    /// Sizes of X_1..X_k, comma separated (e.g. 2,3,2).
    #[arg(long, global = true)]
    shape: Option<String>,
    /// Flat TOML file with defaults for these options.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest number of tuples/assignments an enumeration may visit.
    #[arg(long = "enum-cap", global = true)]
    enum_cap: Option<u64>,
    /// Largest determinant dimension to expand.
    #[arg(long = "det-cap", global = true)]
    det_cap: Option<usize>,
    /// Worker threads for the census.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for `sample`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of tuples in a class.
    Card {
        #[arg(long = "N")]
        n: Option<usize>,
        /// Cycle type such as 2+1.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Generating polynomial of a class.
    Poly {
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Exact probability on k sets of size n, or the proportional limit.
    Prob {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "N")]
        cycle: Option<usize>,
        /// Report lim p_{cn,N}(n) for this c.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Compare every closed form with exhaustive enumeration.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Count (and weigh) every tuple by cycle type.
    Census {
        /// Skip the weight polynomials.
        #[arg(long)]
        no_weights: bool,
    },
    /// Cycle-type frequencies of uniformly drawn tuples.
    Sample {
        #[arg(long)]
        trials: u64,
    },
    /// Forest weight rooted at a choice set: determinant, closed form and enumeration.
    ForestDet {
        /// Per-component 1-based indices, e.g. "1,2;1,3".
        #[arg(long = "U")]
        u: String,
    },
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let file = cli.config.as_deref().map(FileConfig::load).transpose()?;
    let flags = FlagOverrides {
        shape: cli.shape.clone(),
        enumeration_cap: cli.enum_cap,
        det_cap: cli.det_cap,
        seed: cli.seed,
        workers: cli.workers,
        output: cli.output.clone(),
        format: cli.format,
    };
    RunConfig::resolve(&|name| std::env::var(name).ok(), file, flags)
}

/// Runs the command; the flag is false when `verify` found a failing check.
fn execute(cli: &Cli, cfg: &RunConfig) -> Result<(Value, bool)> {
    let value = match &cli.command {
        Command::Card { n, lambda } => {
            commands::card(cfg.require_shape()?, &ClassSpec::from_flags(*n, lambda.as_deref())?)?
        }
        Command::Poly { n, lambda } => {
            commands::poly(cfg.require_shape()?, &ClassSpec::from_flags(*n, lambda.as_deref())?)?
        }
        Command::Prob { n, k, cycle, limit } => commands::prob(*n, *k, *cycle, *limit)?,
        Command::Verify { suite } => {
            let shape = cfg.require_shape()?;
            let checks = verify::run(cfg, shape, *suite)?;
            let report = verify::report(shape, *suite, &checks);
            let pass = checks.iter().all(|c| c.pass);
            return Ok((report, pass));
        }
        Command::Census { no_weights } => commands::census(cfg, cfg.require_shape()?, !no_weights)?,
        Command::Sample { trials } => commands::sample(cfg, cfg.require_shape()?, *trials)?,
        Command::ForestDet { u } => commands::forest_det(cfg, cfg.require_shape()?, u)?,
    };
    Ok((value, true))
}

fn fail(e: &Error) -> ExitCode {
    let kind = match e {
        Error::Parse(_) => "parse",
        Error::Domain(_) => "domain",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::InvariantViolation(_) => "invariant_violation",
    };
    eprintln!("{}", json!({ "error": { "kind": kind, "message": e.to_string() } }));
    ExitCode::from(exit_code(e) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e),
    };
    let (value, pass) = match execute(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let text = render(&value, cfg.format);
    match &cfg.output {
        None => print!("{text}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("{}", json!({ "error": { "kind": "io", "message": format!("{}: {e}", path.display()) } }));
                return ExitCode::from(1);
            }
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED as u8)
    }
}
