use std::process::ExitCode;

use clap::Parser;

use npgen_cli::commands::{self, Command};

/// Instance generation, verification, scoring and benchmarking for NP-hard
/// optimization tasks.
#[derive(Debug, Parser)]
#[command(name = "npgen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(summary) => {
            if !summary.is_empty() {
                println!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
