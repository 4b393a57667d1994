use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use convex_order_cli::{run, run_str, Command, RunConfig, DEFAULT_SEED, SEED_ENV};

#[derive(Clone, Copy, ValueEnum)]
enum Sub {
    Decompose,
    Monotone,
    Piecewise,
    Components,
    Helly,
    Simulate,
    Ultrametric,
    Oracle,
    Verify,
    Generate,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Decompose => Command::Decompose,
            Sub::Monotone => Command::Monotone,
            Sub::Piecewise => Command::Piecewise,
            Sub::Components => Command::Components,
            Sub::Helly => Command::Helly,
            Sub::Simulate => Command::Simulate,
            Sub::Ultrametric => Command::Ultrametric,
            Sub::Oracle => Command::Oracle,
            Sub::Verify => Command::Verify,
            Sub::Generate => Command::Generate,
        }
    }
}

/// Block reversals of finite linear orders: decomposition, monotonicity,
/// Helly extraction and block-order simulation over JSON.
#[derive(Parser)]
#[command(name = "convex-order-kit", version)]
struct Cli {
    /// Subcommand to run.
    #[arg(value_enum)]
    command: Sub,
    /// Input JSON file; `-` reads standard input.
    input: Option<PathBuf>,
    /// Seed for `verify` and `generate`.
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest carrier for exhaustive enumeration.
    #[arg(long, default_value_t = convex_order_kit::decompose::DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    /// Allow an oracle bound above the default.
    #[arg(long)]
    force: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdin = cli.input.as_deref().is_some_and(|p| p.as_os_str() == "-");
    let config = RunConfig {
        command: cli.command.into(),
        input_path: if stdin { None } else { cli.input },
        seed: cli.seed,
        oracle_bound: cli.oracle_bound,
        force: cli.force,
        output_path: cli.out.clone(),
    };
    let outcome = if stdin {
        let mut buf = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
            eprintln!("cannot read standard input: {e}");
            return ExitCode::from(1);
        }
        let o = run_str(&config, Some(&buf));
        if let Some(path) = &config.output_path {
            if let Err(e) = std::fs::write(path, o.rendered()) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        o
    } else {
        run(&config)
    };
    if config.output_path.is_none() {
        print!("{}", outcome.rendered());
    }
    if outcome.exit_code != 0 {
        if let Some(e) = outcome.report.get("error").and_then(|e| e.as_str()) {
            eprintln!("{e}");
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}
