//! Library surface of the `tracecut` binary, split out so integration
//! tests can drive the subcommands in-process.

pub mod cli;
pub mod cluster;
pub mod error;
pub mod format;
pub mod report;
pub mod verify;

use std::io::Write;

use cli::{Cli, Command};
use error::CliError;

/// Executes a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Cluster(args) => {
            let (_, rendered) = cluster::run_cluster(&args)?;
            match &args.output {
                Some(path) => std::fs::write(path, rendered)?,
                None => {
                    let mut stdout = std::io::stdout().lock();
                    stdout.write_all(rendered.as_bytes())?;
                }
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let outcome = verify::run_verify(&args)?;
            let mut stdout = std::io::stdout().lock();
            for line in &outcome.lines {
                writeln!(stdout, "{line}")?;
            }
            Ok(if outcome.all_pass {
                0
            } else {
                CliError::VerificationFailed.exit_code()
            })
        }
    }
}
