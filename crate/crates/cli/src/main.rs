mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{code, CliError};
use output::Run;

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::new(code::USAGE, format!("--jobs {n}: {e}")))?;
    }
    match &cli.command {
        Command::Simulate(a) => commands::simulate_cmd(a, &Run::start("simulate", cli.timing)),
        Command::Scan(a) => commands::scan_cmd(a, &Run::start("scan", cli.timing)),
        Command::AnalyzeTetouan(a) => {
            commands::tetouan_cmd(a, &Run::start("analyze-tetouan", cli.timing))
        }
        Command::Repro(a) => commands::repro_cmd(a, &Run::start("repro", cli.timing)),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
