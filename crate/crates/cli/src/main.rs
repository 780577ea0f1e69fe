use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use selfsim_cli::output::to_sorted_json;
use selfsim_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SELFSIM_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let msg = e.to_string();
            let msg = msg.trim_start_matches("error: ").trim_end();
            return fail(&CliError::Config(msg.to_string()));
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!(
                "{}",
                to_sorted_json(&outcome.report).expect("report serializes")
            );
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    log::error!("{e}");
    print!(
        "{}",
        to_sorted_json(&e.to_json()).expect("error report serializes")
    );
    ExitCode::from(e.exit_code())
}
