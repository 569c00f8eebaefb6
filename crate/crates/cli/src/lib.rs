//! The `pentaverify` command line, as a library so tests can drive it in-process.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails, 2 for usage
//! errors and arguments outside the supported range.

pub mod args;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use pentaverify_core::qseries::Identity;
use pentaverify_core::{CoeffSeries, Error};

pub use args::{Cli, Command, Format};
pub use output::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "PENTAVERIFY_THREADS";

/// Builds both sides of an identity for a given k and truncation order.
pub type SidesFn = fn(Identity, usize, usize) -> pentaverify_core::Result<(CoeffSeries, CoeffSeries)>;

/// Replaceable pieces of the pipeline, for negative-control tests.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub identity_sides: SidesFn,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            identity_sides: |id, k, order| id.sides(k, order),
        }
    }
}

/// A computed table plus what to say about it.
pub(crate) struct Report {
    pub command: &'static str,
    pub config: serde_json::Value,
    pub table: Table,
    pub output: args::OutputArgs,
    pub notes: Vec<String>,
    pub code: i32,
}

pub(crate) fn error_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } | Error::InexactDivision | Error::OrderMismatch { .. } => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn thread_count() -> Result<usize, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got `{s}`")),
        },
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, stdout, stderr, &Hooks::default())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, hooks: &Hooks) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let hooks = *hooks;
    let report = pool.install(move || commands::dispatch(cli.command, &hooks));
    match report {
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            error_code(&e)
        }
        Ok(report) => {
            if let Err(e) = output::emit(&report.table, report.command, &report.config, &report.output, stdout) {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            for note in &report.notes {
                let _ = writeln!(stderr, "{note}");
            }
            report.code
        }
    }
}
