//! `realclif`: verification suites and calculators.
//!
//! Exit status is 0 when every check passes, 1 on a verification failure and
//! 2 on usage or parse errors.

mod args;
mod calc;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Verify { suite } => verify::run_suite(&cli, suite),
        Command::Extension { action } => verify::run_extension(&cli, action),
        Command::Calc { op } => calc::run(&cli, op).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
