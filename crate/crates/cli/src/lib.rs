//! The `liecoh` command-line front end: argument parsing, command
//! execution and report rendering, callable in-process.

pub mod args;
mod commands;
pub mod mutate;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Format};
pub use report::{Report, Verdict, SCHEMA};

/// Environment variable bounding the worker threads.
pub const THREADS_ENV: &str = "LIECOH_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] liecoh_core::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

/// Exit code, rendered document and diagnostics of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Runs with the thread bound taken from `LIECOH_THREADS`.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match std::env::var(THREADS_ENV) {
        Err(_) => run_with_threads(argv, None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => run_with_threads(argv, Some(n)),
            _ => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {THREADS_ENV} must be a positive integer, got {v:?}\n"),
                report: None,
            },
        },
    }
}

/// Runs on a dedicated pool of `threads` workers, or the global pool.
pub fn run_with_threads<I, T>(argv: I, threads: Option<usize>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text, report: None }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new(), report: None }
            };
        }
    };
    let exec = || execute(&cli);
    let result = match threads {
        None => exec(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let hint = match e {
                CliError::Usage(_) => "\nrun `liecoh --help` for usage\n",
                _ => "\n",
            };
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}{hint}"), report: None };
        }
    };
    let doc = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let code = report.exit_code();
    let mut stderr = String::new();
    if let Some(w) = report.verdicts.iter().find_map(|v| v.witness.as_ref()) {
        stderr = format!("falsified: {} at {:?} = {}\n", w.label, w.index, w.value);
    }
    match &cli.output {
        Some(path) => match std::fs::write(path, &doc) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr, report: Some(report) },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", CliError::Io(e)), report: None },
        },
        None => Outcome { code, stdout: doc, stderr, report: Some(report) },
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let config = serde_json::to_value(cli).expect("arguments serialize");
    let mutation = cli.mutate.as_deref().map(str::parse).transpose()?;
    let start = Instant::now();
    let mut report = commands::dispatch(&cli.command, config, mutation.as_ref())?;
    report.timings.push(("total".into(), start.elapsed()));
    Ok(report)
}
