use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use fpeps_cli::{configure_threads, run, Cli, ConfigError, EXIT_CONFIG};

fn emit(cli: &Cli, text: &str) -> Result<(), ConfigError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let threads = std::env::var("FPEPS_THREADS").ok();
    let result = configure_threads(threads.as_deref()).and_then(|()| run(&cli)).and_then(|o| {
        emit(&cli, &o.output)?;
        Ok(o)
    });
    match result {
        Ok(o) => {
            eprintln!("{}", o.summary);
            ExitCode::from(o.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
