//! Command-line interface: `simulate`, `theory` and `estimate`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid arguments or malformed
//! input, 3 estimator domain error.

mod estimate;
mod io;
mod simulate;
mod theory;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use io::format_g;

use crate::model::InfectiousPeriodDist;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "EPIKIT_THREADS";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn io(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn estimator(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "epikit", version, about = "Stochastic SIR simulation, theory and inference")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run replicated stochastic simulations and write CSV or JSON files.
    Simulate(simulate::SimulateArgs),
    /// Evaluate deterministic and branching-process quantities.
    Theory {
        #[command(subcommand)]
        query: theory::TheoryQuery,
    },
    /// Run an estimator on data files or summary statistics.
    Estimate {
        #[command(subcommand)]
        query: estimate::EstimateQuery,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PeriodKind {
    Exponential,
    Constant,
    Gamma,
}

/// Infectious-period law shared by several commands.
#[derive(Debug, Clone, Args)]
pub struct PeriodArgs {
    #[arg(long, value_enum, default_value = "exponential")]
    pub period: PeriodKind,
    /// Recovery rate of the exponential law.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Length of the constant law.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub length: f64,
    /// Shape of the gamma law.
    #[arg(long, allow_negative_numbers = true)]
    pub shape: Option<f64>,
    /// Rate of the gamma law.
    #[arg(long, allow_negative_numbers = true)]
    pub rate: Option<f64>,
}

impl PeriodArgs {
    pub fn dist(&self) -> Result<InfectiousPeriodDist, CliError> {
        let dist = match self.period {
            PeriodKind::Exponential => InfectiousPeriodDist::exponential(self.gamma),
            PeriodKind::Constant => InfectiousPeriodDist::constant(self.length),
            PeriodKind::Gamma => match (self.shape, self.rate) {
                (Some(shape), Some(rate)) => InfectiousPeriodDist::gamma(shape, rate),
                _ => return Err(CliError::input("--period gamma needs --shape and --rate")),
            },
        };
        dist.validate().map_err(|e| CliError::input(e.to_string()))?;
        Ok(dist)
    }
}

/// Output path argument shared by the file-writing commands.
#[derive(Debug, Clone, Args)]
pub struct OutDir {
    /// Directory receiving the output files (created if missing).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => simulate::run(&args, out),
        Command::Theory { query } => theory::run(&query, out),
        Command::Estimate { query } => estimate::run(&query, out),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Writes to stdout, mapping failures to I/O errors.
pub(crate) fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io(e.to_string()))
}
