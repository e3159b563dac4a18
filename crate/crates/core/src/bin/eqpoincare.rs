use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use eqpoincare::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (rendering, output, code) = run(&cli);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &rendering) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(rendering.as_bytes());
        }
    }
    ExitCode::from(code as u8)
}
