//! Command-line runner and JSON-lines result store.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use serde::Serialize;

use cli::{Cli, Command, Format};
use error::CliError;
use record::{RunRecord, SCHEMA_VERSION, VERSION};

fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn encode(records: &[RunRecord], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => record::to_csv(records),
        Format::Json => record::to_json_lines(records),
    }
}

fn execute<A: Serialize>(
    name: &str,
    args: &A,
    output: &cli::OutputArgs,
    store: &Path,
    out: &mut dyn Write,
    f: impl FnOnce(&A, &mut dyn Write) -> Result<commands::Outcome, CliError>,
) -> Result<(), CliError> {
    let config = serde_json::to_value(args).map_err(|e| CliError::Domain(e.to_string()))?;
    let started_at_ms = now_ms();
    let (payload, diagnostics) = f(args, out)?;
    let record = RunRecord {
        schema_version: SCHEMA_VERSION,
        run_id: record::run_id(name, &config),
        subcommand: name.to_string(),
        version: VERSION.to_string(),
        config,
        started_at_ms,
        finished_at_ms: now_ms(),
        payload,
        diagnostics,
    };
    record::append(&record, store)?;
    if let Some(path) = &output.out {
        write_file(path, &encode(std::slice::from_ref(&record), output.format)?)?;
    }
    writeln!(out, "run {}", record.run_id).ok();
    Ok(())
}

/// Parses `argv`, runs the subcommand, and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    write!(out, "{text}").ok();
                    0
                }
                _ => {
                    write!(err, "{text}").ok();
                    1
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let store = cli.store.as_path();
    match &cli.command {
        Command::Census(a) => execute("census", a, &a.output, store, out, commands::census),
        Command::Fiber(a) => execute("fiber", a, &a.output, store, out, commands::fiber),
        Command::Reducible(a) => execute("reducible", a, &a.output, store, out, commands::reducible),
        Command::Pila(a) => execute("pila", a, &a.output, store, out, commands::pila),
        Command::OracleCubic(a) => execute("oracle-cubic", a, &a.output, store, out, commands::oracle_cubic),
        Command::Critical(a) => execute("critical", a, &a.output, store, out, commands::critical),
        Command::Fit(a) => execute("fit", a, &a.output, store, out, commands::fit),
        Command::Export(a) => {
            let bytes = encode(&record::read_store(store)?, a.format)?;
            match &a.out {
                Some(path) => write_file(path, &bytes),
                None => out.write_all(&bytes).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
            }
        }
    }
}
