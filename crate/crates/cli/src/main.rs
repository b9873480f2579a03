//! `lq`: run, observe and explore λ, λᵖ and λᑫ programs.

mod repl;
mod run;
mod session;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use lq_core::eval::DEFAULT_FUEL;
use lq_core::prelude::PRELUDE_SOURCE;
use lq_core::Level;

use run::{Mode, RunRequest};

// Church arithmetic recurses deeply; evaluation gets its own large stack.
const STACK_BYTES: usize = 512 << 20;

#[derive(Parser)]
#[command(name = "lq", version, about = "Interpreter for the λ, λᵖ and λᑫ calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a program and report its value, an observation or its distribution.
    Run(RunArgs),
    /// Interactive session.
    Repl(ReplArgs),
    /// Print the prelude, or write it to a file.
    Prelude {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_level(s: &str) -> Result<Level, String> {
    Level::from_short_name(s).ok_or_else(|| format!("unknown level `{s}` (expected l, p or q)"))
}

#[derive(Args)]
struct RunArgs {
    /// Calculus: l (λ), p (λᵖ) or q (λᑫ).
    #[arg(long, default_value = "q", value_parser = parse_level)]
    level: Level,
    #[arg(long, value_enum, default_value_t = Mode::Observe)]
    mode: Mode,
    /// Seed for observe and sample modes; drawn from entropy and printed if absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of draws in sample mode.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Maximum number of β-steps.
    #[arg(long, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// Print every reduction step before the result.
    #[arg(long)]
    trace: bool,
    /// Program text.
    #[arg(long, conflicts_with = "source")]
    expr: Option<String>,
    /// Program file (inline text is accepted too).
    #[arg(required_unless_present = "expr")]
    source: Option<String>,
}

#[derive(Args)]
struct ReplArgs {
    #[arg(long, default_value = "q", value_parser = parse_level)]
    level: Level,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<lq_core::Error>() {
        Some(lq_core::Error::Observation(_)) => 2,
        _ => 1,
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(a) => {
            let req = RunRequest {
                source: a.expr.or(a.source).expect("clap requires one"),
                level: a.level,
                mode: a.mode,
                seed: a.seed,
                samples: a.samples,
                fuel: a.fuel,
                trace: a.trace,
            };
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            let result = run::run(&req, &mut out);
            out.flush()?;
            result
        }
        Command::Repl(a) => {
            let seed = a.seed.unwrap_or_else(run::entropy_seed);
            repl::repl(a.level, seed, a.fuel)
        }
        Command::Prelude { out: None } => {
            print!("{PRELUDE_SOURCE}");
            Ok(())
        }
        Command::Prelude { out: Some(path) } => {
            std::fs::write(&path, PRELUDE_SOURCE)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let worker = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || execute(cli))
        .expect("spawn evaluator thread");
    match worker.join() {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
        Err(_) => ExitCode::from(1),
    }
}
