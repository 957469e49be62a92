use std::io::Write;
use std::process::ExitCode;

use abtaut_cli::{render, run, Command, CommandRequest, Format, DEFAULT_MAX_GENUS};
use clap::Parser;

/// Exact computations in the tautological ring of A_g.
#[derive(Debug, Parser)]
#[command(name = "abtaut", version)]
struct Cli {
    /// Output format; csv is only accepted for the satake table
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Truncation degree for the Borel-Serre check
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Largest genus for which the ring is built
    #[arg(long = "max-g", env = "ABTAUT_MAX_G", default_value_t = DEFAULT_MAX_GENUS, global = true)]
    max_g: u32,
    /// Attach wall-clock timing to the envelope (makes output non-reproducible)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let request =
        CommandRequest { command: cli.command, format: cli.format, bound: cli.bound, max_genus: cli.max_g, timing: cli.timing };
    let result = run(&request).and_then(|env| Ok((render(&env, request.format)?, env.exit_code())));
    match result {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("abtaut: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
