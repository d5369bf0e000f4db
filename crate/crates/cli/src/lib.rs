//! File formats, reports and the `symscat` command-line frontend over
//! `symscat-core`.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod io;

use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use error::{CliError, CliResult};

/// Runs a parsed command and writes its output to `--out` or standard output.
pub fn run(cli: &Cli) -> CliResult<()> {
    let text = commands::execute(&cli.command)?;
    match &commands::output_args(&cli.command).out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (without the program name) and returns the report text
/// that `run` would write.
pub fn render(args: &[&str]) -> CliResult<String> {
    let cli = Cli::try_parse_from(std::iter::once("symscat").chain(args.iter().copied()))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    commands::execute(&cli.command)
}
