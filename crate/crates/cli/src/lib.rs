//! Command-line front end for `partiq-core`.
//!
//! Every subcommand builds a [`Report`]: a JSON document, a plain-text
//! rendering and a CSV table. The global `--format` flag picks one.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

pub use args::{Cli, Command, Format};
pub use error::CliError;
pub use output::{OutputDocument, Report};

/// Runs a parsed invocation and returns the rendered bytes.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let report = commands::dispatch(cli)?;
    report.render(cli.format)
}
