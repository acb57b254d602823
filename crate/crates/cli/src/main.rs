use std::process::ExitCode;

use clap::Parser;
use latfree_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("latfree: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
