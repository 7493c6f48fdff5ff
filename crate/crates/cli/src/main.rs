use std::process::ExitCode;

use clap::Parser;

use implab::{execute, Cli, EXIT_ERROR};
use implab_core::Budget;

fn run(cli: &Cli) -> Result<i32, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .map_err(|e| e.to_string())?;
    let budget = Budget::from_env().map_err(|e| e.to_string())?;
    let outcome = execute(cli, &budget).map_err(|e| e.to_string())?;
    let json = outcome.report.to_json();
    match &cli.output {
        Some(path) => {
            std::fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?;
            if cli.summary {
                for line in &outcome.summary {
                    println!("{line}");
                }
            }
        }
        None => {
            // Standard output carries the JSON, so the summary goes to stderr.
            if cli.summary {
                for line in &outcome.summary {
                    eprintln!("{line}");
                }
            }
            print!("{json}");
        }
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
