use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tcss::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.output.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("tcss: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
