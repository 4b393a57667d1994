//! JSON front end for `convex_order_kit`.
//!
//! [`run`] executes one subcommand on a JSON document and returns the exit
//! status with the JSON report. Reports are pretty-printed with sorted keys
//! where maps are involved, so identical input and seed give identical bytes.

mod commands;
mod generate;
mod verify;

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use generate::generate;
pub use verify::{run_suites, SuiteReport};

/// Seed used when neither `--seed` nor the environment provides one.
pub const DEFAULT_SEED: u64 = 0;
pub const SEED_ENV: &str = "CONVEX_ORDER_KIT_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
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

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Decompose,
        Command::Monotone,
        Command::Piecewise,
        Command::Components,
        Command::Helly,
        Command::Simulate,
        Command::Ultrametric,
        Command::Oracle,
        Command::Verify,
        Command::Generate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::Monotone => "monotone",
            Command::Piecewise => "piecewise",
            Command::Components => "components",
            Command::Helly => "helly",
            Command::Simulate => "simulate",
            Command::Ultrametric => "ultrametric",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
            Command::Generate => "generate",
        }
    }

    /// Whether the command reads an input document.
    pub fn needs_input(self) -> bool {
        !matches!(self, Command::Verify | Command::Generate)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub seed: u64,
    pub oracle_bound: usize,
    pub force: bool,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input_path: None,
            seed: DEFAULT_SEED,
            oracle_bound: convex_order_kit::decompose::DEFAULT_ORACLE_BOUND,
            force: false,
            output_path: None,
        }
    }
}

/// Why a run did not succeed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    /// Unreadable or invalid input; exit status 1.
    Input {
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },
    /// Well-formed input on which the operation fails; exit status 2.
    Domain(String),
}

impl RunError {
    pub fn input(message: impl Into<String>) -> Self {
        RunError::Input {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input { .. } => 1,
            RunError::Domain(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            RunError::Input {
                message,
                line,
                column,
            } => json!({
                "status": "input_error",
                "error": message,
                "line": line,
                "column": column,
            }),
            RunError::Domain(message) => json!({
                "status": "failure",
                "error": message,
            }),
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input {
                message,
                line: Some(l),
                column: Some(c),
            } => write!(f, "input error at line {l}, column {c}: {message}"),
            RunError::Input { message, .. } => write!(f, "input error: {message}"),
            RunError::Domain(m) => write!(f, "failure: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        let line = (e.line() > 0).then_some(e.line());
        let column = (e.line() > 0).then_some(e.column());
        RunError::Input {
            message: e.to_string(),
            line,
            column,
        }
    }
}

/// Exit status and report of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

impl Outcome {
    /// The report as emitted: pretty JSON with a trailing newline.
    pub fn rendered(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Runs `config.command` on an in-memory input document.
pub fn run_str(config: &RunConfig, input: Option<&str>) -> Outcome {
    let result = if config.oracle_bound > convex_order_kit::decompose::DEFAULT_ORACLE_BOUND
        && !config.force
    {
        Err(RunError::input(format!(
            "--oracle-bound {} exceeds {} without --force",
            config.oracle_bound,
            convex_order_kit::decompose::DEFAULT_ORACLE_BOUND
        )))
    } else {
        match (config.command.needs_input(), input) {
            (true, None) => Err(RunError::input(format!(
                "`{}` needs an input document",
                config.command.name()
            ))),
            (_, input) => commands::dispatch(config, input.unwrap_or("")),
        }
    };
    match result {
        Ok(report) => Outcome {
            exit_code: 0,
            report,
        },
        Err(e) => Outcome {
            exit_code: e.exit_code(),
            report: e.to_json(),
        },
    }
}

/// Reads the input file (if any), runs, and writes the report to the output
/// path (if any). The returned outcome holds the report either way.
pub fn run(config: &RunConfig) -> Outcome {
    let input = match &config.input_path {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(s) => Some(s),
            Err(e) => {
                let err = RunError::input(format!("cannot read {}: {e}", path.display()));
                return Outcome {
                    exit_code: err.exit_code(),
                    report: err.to_json(),
                };
            }
        },
        None => None,
    };
    let outcome = run_str(config, input.as_deref());
    if let Some(path) = &config.output_path {
        if let Err(e) = std::fs::write(path, outcome.rendered()) {
            let err = RunError::input(format!("cannot write {}: {e}", path.display()));
            return Outcome {
                exit_code: err.exit_code(),
                report: err.to_json(),
            };
        }
    }
    outcome
}
