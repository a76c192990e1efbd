//! Command-line front end for `finric-core`: algebra files, the `verify-zeta`,
//! `ricci` and `scan` commands, and their reports.

pub mod algebra_file;
pub mod commands;
pub mod error;
pub mod report;

pub use algebra_file::{parse_algebra, AlgebraFile, AlphaRicciField, Bracket, LoadedAlgebra, MetricField};
pub use commands::{run, Cli, Command, Outcome};
pub use error::{exit, CliError};
pub use report::{strip_timestamp, Emit, ReportEnvelope};

use clap::error::ErrorKind;
use clap::Parser;

/// Parses `args`, runs the command and returns `(stdout, stderr, exit code)`.
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::INPUT,
            };
            let text = e.render().to_string();
            return if code == exit::OK { (text, String::new(), code) } else { (String::new(), text, code) };
        }
    };
    match run(&cli) {
        Ok(out) => (out.report.render(cli.emit), String::new(), out.exit_code),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
