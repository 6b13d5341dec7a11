//! Command-line front end for `hypam`: coefficient dumps, classification,
//! theorem verification, bound grids and parameter sweeps.

pub mod args;
pub mod checks;
pub mod commands;
pub mod error;
pub mod grid;
pub mod report;
pub mod sweep;

use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use error::{exit, CliResult};

fn dispatch(cli: &Cli) -> CliResult<commands::Output> {
    match &cli.command {
        Command::Coeffs { family, triple, p } => commands::cmd_coeffs(*family, triple, p.as_ref(), cli.order),
        Command::Classify { triple, p } => commands::cmd_classify(triple, p.as_ref()),
        Command::Verify { theorem, triple, p } => commands::cmd_verify(*theorem, triple, p, cli.order, cli.cap),
        Command::Bounds {
            family,
            triple,
            p,
            q,
            n,
            x,
            r,
            region,
        } => commands::cmd_bounds(*family, triple, p, q.as_ref(), *n, x.as_deref(), r.as_deref(), *region),
        Command::Sweep { spec } => {
            let workers = cli
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
            commands::cmd_sweep(spec, cli.order, cli.cap, workers)
        }
    }
}

fn emit(cli: &Cli, out: &commands::Output, stdout: &mut dyn Write) -> CliResult<()> {
    let mut buf = Vec::new();
    match cli.format {
        Format::Csv => out.table.write_csv(&mut buf)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &out.json)?;
            buf.push(b'\n');
        }
    }
    match &cli.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|out| emit(&cli, &out, stdout).map(|_| out.exit));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
