//! Command-line front end: verification suites, operator export and spectra.

pub mod compute;
pub mod config;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};

use clap::Parser;
use hechain::AlgebraError;
use serde_json::Value;
use thiserror::Error;

use crate::config::{Cli, Command, Format, SuiteConfig};

pub use crate::suites::{run_suite, SUITES};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite {0:?}; available: {list}", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownSuite(_) => 2,
            _ => 3,
        }
    }
}

fn render_value(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json value");
            s.push('\n');
            s
        }
        Format::Text => match value {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}\n"),
                    other => format!("{k}: {other}\n"),
                })
                .collect(),
            other => format!("{other}\n"),
        },
    }
}

fn emit(cfg: &SuiteConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn dispatch(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify(options) => {
            let cfg = options.resolve()?;
            let report = run_suite(&cfg)?;
            emit(&cfg, &report.render(cfg.format))?;
            Ok(report.summary.pass)
        }
        Command::Compute { kind, options } => {
            let cfg = options.resolve()?;
            let value = compute::compute(kind, &cfg)?;
            emit(&cfg, &render_value(&value, cfg.format))?;
            Ok(value.get("pass").and_then(Value::as_bool).unwrap_or(true))
        }
        Command::Spectrum(options) => {
            let cfg = options.resolve()?;
            emit(&cfg, &render_value(&compute::spectrum_report(&cfg)?, cfg.format))?;
            Ok(true)
        }
        Command::Tq(options) => {
            let cfg = options.resolve()?;
            let (value, pass) = compute::tq_report(&cfg)?;
            emit(&cfg, &render_value(&value, cfg.format))?;
            Ok(pass)
        }
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
