use std::process::ExitCode;

use clap::Parser;
use cutset_cli::args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cutset_cli::run(&cli) {
        Ok(outcome) => {
            match serde_json::to_string_pretty(&outcome.summary) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("I/O error: {e}");
                    return ExitCode::from(3);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cutset: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
