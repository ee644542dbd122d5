use std::io::Write;
use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;

use super::io::{read_final_size, read_incidence, read_temporal};
use super::theory::Output;
use super::{emit, format_g, CliError, OutputFormat, PeriodArgs};
use crate::inference::{self, TimeWindow};
use crate::model::{EstimateWithSE, GenerationTimeDist};

#[derive(Debug, Subcommand)]
pub enum EstimateQuery {
    /// R0 from a final-size file with header n,s,r_tilde_s[,pi_hat].
    FinalSize {
        #[arg(long)]
        input: PathBuf,
        /// Coefficient of variation of the infectious period.
        #[arg(long, default_value_t = inference::DEFAULT_CV, allow_negative_numbers = true)]
        cv: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Critical vaccination coverage from a final-size file.
    VcFinalSize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = inference::DEFAULT_CV, allow_negative_numbers = true)]
        cv: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Exponential growth rate from an incidence file with header time,cases.
    GrowthRate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// R0 from incidence growth and the generation time of an infectious-period law.
    Emerging {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[command(flatten)]
        period: PeriodArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Infection rate, mean infectious period, their product and a model-fit
    /// check from a t,S,I,R trajectory and a duration file.
    Temporal {
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        durations: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// R0 from the average age at infection and the average lifespan.
    Endemic {
        #[arg(long, allow_negative_numbers = true)]
        age: f64,
        #[arg(long, allow_negative_numbers = true)]
        lifespan: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Critical vaccination coverage from endemic data.
    VcEndemic {
        #[arg(long, allow_negative_numbers = true)]
        age: f64,
        #[arg(long, allow_negative_numbers = true)]
        lifespan: f64,
        #[command(flatten)]
        output: Output,
    },
}

fn estimator(e: crate::Error) -> CliError {
    CliError::estimator(e.to_string())
}

fn text_block(e: &EstimateWithSE) -> String {
    let se = e.se.map_or_else(|| "n/a".to_string(), format_g);
    let ci = e
        .ci95
        .map_or_else(|| "n/a".to_string(), |(lo, hi)| format!("{} {}", format_g(lo), format_g(hi)));
    format!("estimate {}\nse {se}\nci95 {ci}\nmethod {}\n", format_g(e.estimate), e.method)
}

fn report(out: &mut dyn Write, format: OutputFormat, e: &EstimateWithSE) -> Result<(), CliError> {
    let text = match format {
        OutputFormat::Text => text_block(e),
        OutputFormat::Json => format!("{}\n", serde_json::to_string(e).expect("serializable estimate")),
    };
    emit(out, &text)
}

fn window(from: Option<f64>, to: Option<f64>) -> TimeWindow {
    TimeWindow::new(from.unwrap_or(f64::NEG_INFINITY), to.unwrap_or(f64::INFINITY))
}

pub fn run(query: &EstimateQuery, out: &mut dyn Write) -> Result<(), CliError> {
    match query {
        EstimateQuery::FinalSize { input, cv, output } => {
            let data = read_final_size(input)?;
            let e = inference::estimate_r0_final_size(&data, *cv).map_err(estimator)?;
            report(out, output.format, &e)
        }
        EstimateQuery::VcFinalSize { input, cv, output } => {
            let data = read_final_size(input)?;
            let e = inference::estimate_vc_final_size(&data, *cv).map_err(estimator)?;
            report(out, output.format, &e)
        }
        EstimateQuery::GrowthRate { input, from, to, output } => {
            let series = read_incidence(input)?;
            let e = inference::estimate_growth_rate(&series, window(*from, *to)).map_err(estimator)?;
            report(out, output.format, &e)
        }
        EstimateQuery::Emerging { input, from, to, period, output } => {
            let series = read_incidence(input)?;
            let g = GenerationTimeDist::from_period(period.dist()?);
            let e = inference::estimate_r0_emerging(&series, &g, window(*from, *to)).map_err(estimator)?;
            report(out, output.format, &e)
        }
        EstimateQuery::Temporal { trajectory, durations, output } => {
            let data = read_temporal(trajectory, Some(durations))?;
            let beta = inference::estimate_beta(&data).map_err(estimator)?;
            let period = inference::estimate_infectious_period(&data).map_err(estimator)?;
            let r0 = inference::estimate_r0_temporal(&beta, &period);
            let fit = inference::model_fit_report(&data, beta.estimate, period.estimate);
            let text = match output.format {
                OutputFormat::Text => format!(
                    "[beta]\n{}[mean_period]\n{}[r0]\n{}[fit]\nmax_discrepancy {}\nl2_discrepancy {}\nflagged {}\n",
                    text_block(&beta),
                    text_block(&period),
                    text_block(&r0),
                    format_g(fit.max_discrepancy),
                    format_g(fit.l2_discrepancy),
                    fit.flagged
                ),
                OutputFormat::Json => format!(
                    "{}\n",
                    json!({ "beta": beta, "mean_period": period, "r0": r0, "fit": fit })
                ),
            };
            emit(out, &text)
        }
        EstimateQuery::Endemic { age, lifespan, output } => {
            let e = inference::estimate_r0_endemic(*age, *lifespan).map_err(estimator)?;
            report(out, output.format, &e)
        }
        EstimateQuery::VcEndemic { age, lifespan, output } => {
            let e = inference::estimate_vc_endemic(*age, *lifespan).map_err(estimator)?;
            report(out, output.format, &e)
        }
    }
}
