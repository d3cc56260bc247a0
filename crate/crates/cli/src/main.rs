mod args;
mod commands;
mod table;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, FormatArg};
use commands::CmdError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();

    let (result, common) = match &cli.command {
        Command::Potential(a) => (commands::cmd_potential(a), &a.common),
        Command::Bound(a) => (commands::cmd_bound(a), &a.common),
        Command::Phase(a) => (commands::cmd_phase(a), &a.common),
        Command::Observables(a) => (commands::cmd_observables(a), &a.common),
    };

    let table = match result {
        Ok(table) => table,
        Err(CmdError::Config(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CmdError::Numerical { row, message }) => {
            eprintln!("numerical failure at row [{row}]: {message}");
            return ExitCode::from(3);
        }
    };

    let elapsed_ms = start.elapsed().as_millis();
    let write = |w: &mut dyn Write| -> std::io::Result<()> {
        match common.format {
            FormatArg::Csv => table.write_csv(w),
            FormatArg::Json => table.write_json(w, elapsed_ms),
        }
    };

    let io_result = match &common.out {
        Some(path) => std::fs::File::create(path).and_then(|mut f| write(&mut f)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    };
    if let Err(e) = io_result {
        eprintln!("error: failed to write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
