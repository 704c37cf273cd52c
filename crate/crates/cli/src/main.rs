//! `emchi` command-line front end.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use output::{CliError, Envelope};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let pretty = std::env::args().any(|a| a == "--pretty");
            output::report_error(&CliError::Usage(e.render().to_string()), pretty);
            return ExitCode::from(2);
        }
    };

    let start = std::time::Instant::now();
    let outcome = emchi::resolve::with_configured_pool(|| commands::run(&cli.command, &cli.global));
    match outcome {
        Ok(report) => {
            let elapsed = cli.global.timing.then(|| start.elapsed());
            let code = if report.answer { 0 } else { 1 };
            let env = Envelope::new(&cli.command, report, elapsed);
            output::emit(&env, cli.global.pretty);
            ExitCode::from(code)
        }
        Err(e) => {
            output::report_error(&e, cli.global.pretty);
            ExitCode::from(2)
        }
    }
}
