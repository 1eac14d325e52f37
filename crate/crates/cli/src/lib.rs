//! Command-line front end: loads category, weight, theory and monad files,
//! dispatches checks to `flatlab-core` and emits one JSON report per run.

mod args;
mod commands;
pub mod corpus;
mod load;
pub mod oracles;
mod report;
pub mod verify;

use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

pub use args::Profile;
pub use load::InputDigest;
pub use report::{strip_timing, CliError, Report, Status};

/// Parses `argv` (program name first), runs the command and builds the
/// report. Never panics on bad input; the exit code is in the report.
pub fn execute<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let start = Instant::now();
    let command = argv.iter().skip(1).cloned().collect();
    let mut inputs = commands::Inputs::default();
    let outcome = match args::Cli::try_parse_from(&argv) {
        Ok(cli) => commands::run(&cli.command, &cli.flags, &mut inputs).map_err(|e| classify(&e)),
        Err(e) => {
            let status = match e.kind() {
                ErrorKind::InvalidSubcommand => Status::UnknownCommand,
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Verified,
                _ => Status::InputError,
            };
            Err((status, json!({ "kind": "usage", "message": e.render().to_string() })))
        }
    };
    let (status, output, error) = match outcome {
        Ok(out) => (out.status.unwrap_or(Status::Verified), out, None),
        Err((status, detail)) => (status, report::Output::default(), Some(detail)),
    };
    Report {
        command,
        inputs: inputs.digests,
        status,
        exit_status: status.exit_code(),
        verdicts: output.verdicts,
        witnesses: output.witnesses,
        result: output.result,
        bounds: output.bounds,
        error,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    }
}

fn classify(e: &CliError) -> (Status, Value) {
    let detail = match e {
        CliError::Input { path, line, message } => {
            json!({ "kind": "input", "path": path, "line": line, "message": message })
        }
        CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
        CliError::Failed(m) => json!({ "kind": "failed", "message": m }),
    };
    (Status::InputError, detail)
}
