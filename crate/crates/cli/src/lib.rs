//! Command-line front end for `ghurwitz-core`: matrix construction, single
//! checks, and the three verification harnesses.
//!
//! Every command produces one JSON document and an exit code:
//! 0 when all assertions pass, 1 for a negative verdict (with a witness),
//! 2 for bad input, 3 when the data do not reach far enough.

pub mod commands;
pub mod config;
pub mod equivalence;
pub mod generate;
pub mod quasi;
pub mod report;
pub mod sector;

use ghurwitz_core::Error;
use serde::Serialize;
use serde_json::Value;

pub use config::{Command, Mode, RunConfig};
pub use report::{HarnessReport, Outcome, Summary};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INSUFFICIENT: i32 = 3;

pub const THREADS_ENV: &str = "GHURWITZ_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InsufficientData(_) | Error::OutsideWindow { .. } => EXIT_INSUFFICIENT,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub code: i32,
}

impl Output {
    pub fn new(json: Value, code: i32) -> Self {
        Output { json, code }
    }

    fn report<I: Serialize>(r: &HarnessReport<I>) -> Self {
        let code = if r.pass { EXIT_PASS } else { EXIT_NEGATIVE };
        Output::new(serde_json::to_value(r).expect("reports serialize"), code)
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("values serialize")
    }
}

/// Thread count from `GHURWITZ_THREADS`, if set to a positive integer.
pub fn env_threads() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::input(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (the global pool when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Build => commands::build(cfg),
        Command::CheckTnn => commands::check_tnn_cmd(cfg),
        Command::CheckS => commands::check_s(cfg),
        Command::Equivalence => Ok(Output::report(&equivalence::equivalence_suite(cfg)?)),
        Command::QuasiStability => Ok(Output::report(&quasi::quasi_stability_suite(cfg)?)),
        Command::Sector => Ok(Output::report(&sector::sector_suite(cfg)?)),
    }
}
