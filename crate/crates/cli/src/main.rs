use std::process::ExitCode;

use clap::error::ErrorKind;
use hyperdiff_cli::app::{run_args, EXIT_USAGE};

fn main() -> ExitCode {
    match run_args(std::env::args_os()) {
        Ok(outcome) => {
            let text = outcome.render();
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            for e in &outcome.report.diagnostics.errors {
                eprintln!("error: {e}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            }
        }
    }
}
