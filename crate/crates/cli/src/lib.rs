//! Command-line front end.

pub mod args;
pub mod error;
pub mod format;
pub mod hoa;
pub mod run;

use clap::Parser;
use std::ffi::OsString;

/// Parses `argv` and runs it, returning the process exit code: 0 on
/// success, 1 when a candidate or claim is refuted, 2 on usage or input
/// errors.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run::dispatch(cli) {
        Ok(run::Outcome::Success) => 0,
        Ok(run::Outcome::Refuted) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
