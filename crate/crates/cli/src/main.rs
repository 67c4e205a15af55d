//! `tg`: temporal graph widths, expansions and solvers from the command line.

mod args;
mod commands;
mod error;
mod generate;
mod input;
mod solve;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Info(a) => commands::info(&a),
        Command::Params(a) => commands::params(&a),
        Command::Expand(a) => commands::expand(&a),
        Command::Linegraph(a) => commands::linegraph(&a),
        Command::Labelgraph(a) => commands::labelgraph(&a),
        Command::Tdc(a) => commands::tdc(&a),
        Command::Validate(a) => commands::validate(&a),
        Command::Walk(a) => commands::walk(&a),
        Command::Solve(a) => solve::run(&a),
        Command::Gen(a) => generate::run(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tg: {e}");
            e.exit_code()
        }
    }
}
