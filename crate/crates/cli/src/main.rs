//! `cyclo`: compute cyclic complexity, learn and minimize linear
//! representations, extract automata, and run verification suites.
//!
//! Exit status: 0 when everything requested succeeded (and every checked
//! claim passed), 1 when a verified claim failed, 2 on a configuration or
//! resource error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
