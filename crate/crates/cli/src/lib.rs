//! Command-line front end: optimize, tournament, race and baseline.

pub mod commands;
pub mod error;
pub mod runlog;
pub mod strategy_file;

pub use commands::{execute, Cli, Command};
pub use error::CliError;
pub use strategy_file::StrategyFile;

use clap::Parser;
use std::ffi::OsString;
use std::io::Write;

/// Parses `args`, runs the command and returns the process exit code.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
