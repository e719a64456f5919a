//! `monodromy`: verify the embedded monodromy data of one elliptic-surface
//! family and emit a machine-readable certificate, or dump the embedded
//! dataset for third-party re-verification.
//!
//! Exit codes: 0 when every check passes, 2 when any check fails, 3 on
//! usage errors, 1 on I/O failures.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use monodromy_core::certify::{
    render_report, run_pipeline_with, Certificate, PipelineOptions, ReportFormat,
};
use monodromy_core::families::family_dataset;

#[derive(Parser)]
#[command(name = "monodromy")]
#[command(about = "Exact-arithmetic verifier for elliptic-surface monodromy data")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipeline for a family and report a certificate.
    Verify {
        /// Family to verify (1-4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        family: u8,
        /// Comma-separated check ids to run (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search bound for torsion orders in quasi-unipotency tests.
        #[arg(long, default_value_t = 60)]
        kmax: usize,
    },
    /// Export the embedded dataset of a family as JSON.
    Dump {
        /// Family to export (1-4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        family: u8,
        /// Write the dataset to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(format: Format) -> Self {
        match format {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            // help/version are not usage errors
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 3,
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(message) => write!(f, "{message}"),
            Failure::Io(error) => write!(f, "{error}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(error: std::io::Error) -> Self {
        Failure::Io(error)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Verify {
            family,
            checks,
            format,
            out,
            kmax,
        } => {
            let selection: Option<BTreeSet<String>> = checks.map(|ids| ids.into_iter().collect());
            let options = PipelineOptions {
                torsion_bound: kmax,
            };
            let certificate = run_pipeline_with(family, selection.as_ref(), &options)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let report = render_report(&certificate, format.into());
            emit(&report, out.as_deref())?;
            Ok(exit_code_for(&certificate))
        }
        Command::Dump { family, out } => {
            let dataset = family_dataset(family).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut bytes = serde_json::to_vec_pretty(&dataset).expect("dataset serializes");
            bytes.push(b'\n');
            emit(&bytes, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// 0 iff every check passed, 2 otherwise.
fn exit_code_for(certificate: &Certificate) -> ExitCode {
    if certificate.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn emit(bytes: &[u8], out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}
