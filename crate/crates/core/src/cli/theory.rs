use std::io::Write;

use clap::{Args, Subcommand};
use serde_json::json;

use super::{emit, format_g, CliError, OutputFormat, PeriodArgs};
use crate::error::Error;
use crate::model::{EpidemicParams, GenerationTimeDist};
use crate::theory;

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct BranchingArgs {
    /// Infectious contact rate.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub period: PeriodArgs,
}

impl BranchingArgs {
    fn params(&self) -> Result<EpidemicParams, CliError> {
        let p = EpidemicParams::new(1, self.beta, self.period.dist()?);
        p.validate().map_err(|e| CliError::input(e.to_string()))?;
        Ok(p)
    }
}

#[derive(Debug, Subcommand)]
pub enum TheoryQuery {
    /// Major-outbreak fraction among the initially susceptible.
    FinalSize {
        #[arg(long, allow_negative_numbers = true)]
        r0: f64,
        /// Initially susceptible fraction.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        s: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Probability that one index case causes only a minor outbreak.
    Extinction {
        #[command(flatten)]
        args: BranchingArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Malthusian growth rate of the early epidemic.
    GrowthRate {
        #[command(flatten)]
        args: BranchingArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Endemic equilibrium fractions with births and deaths at rate mu.
    EndemicLevel {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Critical vaccination coverage.
    Vc {
        #[arg(long, allow_negative_numbers = true)]
        r0: f64,
        #[command(flatten)]
        output: Output,
    },
    /// R0 implied by a growth rate and the generation time of an infectious-period law.
    Lotka {
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[command(flatten)]
        period: PeriodArgs,
        #[command(flatten)]
        output: Output,
    },
}

fn domain(e: Error) -> CliError {
    CliError::input(e.to_string())
}

fn single(out: &mut dyn Write, format: OutputFormat, name: &str, value: f64) -> Result<(), CliError> {
    let text = match format {
        OutputFormat::Text => format!("{}\n", format_g(value)),
        OutputFormat::Json => format!("{}\n", json!({ name: value })),
    };
    emit(out, &text)
}

pub fn run(query: &TheoryQuery, out: &mut dyn Write) -> Result<(), CliError> {
    match query {
        TheoryQuery::FinalSize { r0, s, output } => {
            if !(*r0 >= 0.0) {
                return Err(CliError::input(format!("--r0 must be >= 0, got {r0}")));
            }
            if !(*s > 0.0 && *s <= 1.0) {
                return Err(CliError::input(format!("--s must be in (0, 1], got {s}")));
            }
            single(out, output.format, "final_size", theory::solve_final_size(*r0, *s))
        }
        TheoryQuery::Extinction { args, output } => {
            let q = theory::extinction_probability(&args.params()?).map_err(domain)?;
            single(out, output.format, "extinction_probability", q)
        }
        TheoryQuery::GrowthRate { args, output } => {
            let rho = theory::malthusian_rate(&args.params()?).map_err(domain)?;
            single(out, output.format, "growth_rate", rho)
        }
        TheoryQuery::EndemicLevel { beta, gamma, mu, output } => {
            let (s, i, r) = theory::endemic_level(*beta, *gamma, *mu).map_err(domain)?;
            let text = match output.format {
                OutputFormat::Text => format!("s {}\ni {}\nr {}\n", format_g(s), format_g(i), format_g(r)),
                OutputFormat::Json => format!("{}\n", json!({ "s": s, "i": i, "r": r })),
            };
            emit(out, &text)
        }
        TheoryQuery::Vc { r0, output } => {
            if !(*r0 > 0.0) {
                return Err(CliError::input(format!("--r0 must be > 0, got {r0}")));
            }
            single(out, output.format, "critical_vaccination", theory::critical_vaccination(*r0))
        }
        TheoryQuery::Lotka { rho, period, output } => {
            let g = GenerationTimeDist::from_period(period.dist()?);
            let r0 = theory::lotka_r0(*rho, &g).map_err(domain)?;
            single(out, output.format, "r0", r0)
        }
    }
}
