//! `hangrod`: constants, eigenpairs, sweeps and profiles of the hanging-rod
//! eigenproblem as CSV (or JSON).
//!
//! Exit codes: 0 success, 2 usage, 3 solver failure, 4 reference check
//! failure, 1 output error.

mod commands;
mod report;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Report;
use settings::Settings;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("solver: {0}")]
    Solver(#[from] hangrod::Error),
    #[error("check failed for {0}")]
    Check(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Check(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hangrod", version, about = "Eigenmodes of a hanging rod with small bending stiffness")]
struct Cli {
    /// Flat key=value file with defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Computed constants next to their reference values.
    Constants,
    /// Eigenvalue and eigenfunction (y, u, u', u'') at one ε.
    Eigen,
    /// Eigenvalue errors against the series over an ε grid.
    Sweep,
    /// Composite asymptotic eigenfunction against the numerical one.
    Composite,
    /// The free-end layer function Ψ.
    Psi,
    /// Eigenvalue series coefficients.
    Coeffs,
    /// ε and the time scale from physical parameters.
    Nondim,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let settings = match &cli.config {
        Some(path) => cli.settings.or(Settings::from_file(path)?),
        None => cli.settings,
    };
    let mut check_failures = Vec::new();
    let report = match cli.command {
        Command::Constants => {
            let (r, failed) = commands::constants(&settings)?;
            check_failures = failed;
            r
        }
        Command::Eigen => commands::eigen(&settings)?,
        Command::Sweep => commands::sweep_cmd(&settings)?,
        Command::Composite => commands::composite(&settings)?,
        Command::Psi => commands::psi(&settings)?,
        Command::Coeffs => commands::coeffs(&settings)?,
        Command::Nondim => commands::nondim(&settings)?,
    };
    emit(&report, &settings)?;
    if settings.check.unwrap_or(false) && !check_failures.is_empty() {
        return Err(CliError::Check(check_failures.join(", ")));
    }
    Ok(())
}

fn emit(report: &Report, settings: &Settings) -> Result<(), CliError> {
    let mut buf = Vec::new();
    if settings.json.unwrap_or(false) {
        serde_json::to_writer_pretty(&mut buf, &report.to_json()).map_err(std::io::Error::from)?;
        buf.push(b'\n');
    } else {
        report.write_csv(&mut buf)?;
    }
    match &settings.out {
        Some(path) => std::fs::write(path, &buf)?,
        // A closed pipe (`| head`) is not an error.
        None => match std::io::stdout().lock().write_all(&buf) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hangrod: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
