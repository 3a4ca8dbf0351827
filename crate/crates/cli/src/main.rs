use std::process::ExitCode;

use aps_spin_cli::args::Cli;
use aps_spin_cli::{error_json, run, CliError, Scenario};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::InvalidConfig {
                key: "arguments".into(),
                reason: e.render().to_string().trim().to_string(),
            };
            return fail(&err);
        }
    };
    match Scenario::from_cli(cli).and_then(|s| run(&s)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", error_json(err));
    ExitCode::from(err.exit_code() as u8)
}
