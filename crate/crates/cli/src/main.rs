use std::process::ExitCode;

use clap::Parser;

mod cli;
mod expr;
mod fracint;
mod output;
mod sweep;
mod verify;

use cli::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => verify::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Fracint(args) => fracint::run(args),
        Command::Constants(args) => fracint::constants(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
