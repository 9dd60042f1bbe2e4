mod args;
mod commands;
mod failure;
mod output;
mod parallel;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let (result, output) = match &cli.command {
        Command::Density(a) => (commands::density(a), &a.out.output),
        Command::Certify(a) => (commands::certify_cmd(a), &a.out.output),
        Command::Ramsay(a) => (commands::ramsay(a), &a.out.output),
        Command::Counterexample(a) => (commands::counterexample(a), &a.out.output),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = output::write_output(output, &outcome.bytes) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if !outcome.passed {
        eprintln!("error: a theorem check failed; see the report");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
