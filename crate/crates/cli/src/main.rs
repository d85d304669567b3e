use std::process::ExitCode;

use clap::Parser;

use netctrl_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("netctrl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
