use std::process::ExitCode;

use clap::Parser;

use frobcheck_cli::{run, JobSpec, EXIT_ERROR};

fn main() -> ExitCode {
    let job = JobSpec::parse();
    let outcome = match run(&job) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let text = outcome.render();
    match &job.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error[E_IO]: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit_code as u8)
}
