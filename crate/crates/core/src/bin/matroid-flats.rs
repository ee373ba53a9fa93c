use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use matroid_flats::cli::{run, RunConfig};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let config = RunConfig::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&config, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
