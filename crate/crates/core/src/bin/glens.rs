use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use glens::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = execute(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    if let Some(d) = &outcome.diagnostic {
        eprintln!("glens: {d}");
    }
    eprintln!("wall time: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    ExitCode::from(outcome.code)
}
