use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use super::io::{durations_csv, trajectory_csv};
use super::{emit, CliError, Format, OutDir, PeriodArgs, PeriodKind, THREADS_ENV};
use crate::model::{EpidemicParams, Record, SeedTree, Trajectory};
use crate::simulator::{
    chain_final_size, default_takeoff_threshold, run_replicates_with, simulate_endemic, simulate_reed_frost,
    simulate_with, EndemicOptions, Engine, Recording, SimOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Markovian SIR by the Gillespie direct method.
    Markov,
    /// Event-driven SIR with any infectious-period law.
    General,
    /// Discrete-time chain binomial; needs --p.
    ReedFrost,
    /// Markovian SIR with births and deaths; needs --mu and --horizon.
    Endemic,
}

#[derive(Debug, Clone, Args)]
#[command(after_help = "For endemic runs the summary reports the number infectious at the end as \
final_size, took_off = infection still present at the horizon, and the extinction or horizon time.")]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value = "markov")]
    pub model: ModelKind,
    /// Population size.
    #[arg(long)]
    pub n: u64,
    /// Infectious contact rate.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[command(flatten)]
    pub period: PeriodArgs,
    /// Initial infectives.
    #[arg(long, default_value_t = 1)]
    pub i0: u64,
    /// Initially immune fraction.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub immune: f64,
    /// Per-pair transmission probability (reed-frost).
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Birth and death rate (endemic).
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Simulated time span (endemic).
    #[arg(long, allow_negative_numbers = true)]
    pub horizon: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub replicates: u64,
    /// Root seed; every random draw derives from it.
    #[arg(long)]
    pub seed: u64,
    /// Snapshot spacing; by default small populations log every event.
    #[arg(long, allow_negative_numbers = true)]
    pub grid: Option<f64>,
    /// Stop each run after this many infections.
    #[arg(long)]
    pub max_infections: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write only the summary file.
    #[arg(long)]
    pub summary_only: bool,
}

#[derive(Debug, Clone, Serialize)]
struct SummaryRow {
    replicate: u64,
    final_size: u64,
    took_off: bool,
    extinction_time: f64,
}

/// Validated description of one replicate's work.
enum Plan {
    Closed { params: EpidemicParams, options: SimOptions },
    ReedFrost { s0: u64, i0: u64, p: f64, threshold: f64 },
    Endemic { params: EpidemicParams, horizon: f64, options: EndemicOptions },
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::input(msg)
}

fn plan(args: &SimulateArgs) -> Result<Plan, CliError> {
    if args.replicates == 0 {
        return Err(invalid("--replicates must be >= 1"));
    }
    let recording = match args.grid {
        None => Recording::Auto,
        Some(step) if step > 0.0 && step.is_finite() => Recording::Grid(step),
        Some(step) => return Err(invalid(format!("--grid must be > 0, got {step}"))),
    };
    let beta = || args.beta.ok_or_else(|| invalid("--beta is required for this model"));
    let build = |beta: f64| -> Result<EpidemicParams, CliError> {
        let params = EpidemicParams::new(args.n, beta, args.period.dist()?)
            .with_initial_infectives(args.i0)
            .with_immune_fraction(args.immune)
            .with_death_rate(args.mu.unwrap_or(0.0))
            .with_seed(args.seed);
        params.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(params)
    };
    match args.model {
        ModelKind::Markov | ModelKind::General => {
            if args.mu.is_some_and(|m| m != 0.0) {
                return Err(invalid("--mu applies to the endemic model only"));
            }
            if args.model == ModelKind::Markov && args.period.period != PeriodKind::Exponential {
                return Err(invalid("the markov model needs --period exponential"));
            }
            let params = build(beta()?)?;
            let engine = if args.model == ModelKind::Markov { Engine::Markov } else { Engine::EventDriven };
            let mut options = SimOptions::default().with_engine(engine).with_recording(recording);
            if let Some(cap) = args.max_infections {
                options = options.with_max_infections(cap);
            }
            Ok(Plan::Closed { params, options })
        }
        ModelKind::ReedFrost => {
            let p = args.p.ok_or_else(|| invalid("--p is required for the reed-frost model"))?;
            let mut errors = Vec::new();
            if !(0.0..=1.0).contains(&p) {
                errors.push(format!("p must be in [0, 1], got {p}"));
            }
            if args.i0 == 0 || args.i0 > args.n {
                errors.push("i0 must be in [1, n]".to_string());
            }
            if !(0.0..1.0).contains(&args.immune) {
                errors.push("immune fraction must be in [0, 1)".to_string());
            }
            if !errors.is_empty() {
                return Err(invalid(errors.join("; ")));
            }
            let immune = ((args.immune * args.n as f64).round() as u64).min(args.n - args.i0);
            Ok(Plan::ReedFrost {
                s0: args.n - args.i0 - immune,
                i0: args.i0,
                p,
                threshold: default_takeoff_threshold(args.n),
            })
        }
        ModelKind::Endemic => {
            let mu = args.mu.ok_or_else(|| invalid("--mu is required for the endemic model"))?;
            let horizon = args.horizon.ok_or_else(|| invalid("--horizon is required for the endemic model"))?;
            if !(horizon > 0.0 && horizon.is_finite()) {
                return Err(invalid(format!("--horizon must be > 0, got {horizon}")));
            }
            if !(mu > 0.0) {
                return Err(invalid(format!("--mu must be > 0, got {mu}")));
            }
            if args.period.period != PeriodKind::Exponential {
                return Err(invalid("the endemic model needs --period exponential"));
            }
            let params = build(beta()?)?;
            let options = EndemicOptions { recording, ..EndemicOptions::default() };
            Ok(Plan::Endemic { params, horizon, options })
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

struct Writer {
    dir: PathBuf,
    format: Format,
    summary_only: bool,
}

impl Writer {
    fn ext(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn replicate(&self, k: u64, trajectory: &Trajectory, durations: Option<&[f64]>) -> Result<(), CliError> {
        if self.summary_only {
            return Ok(());
        }
        let path = self.dir.join(format!("trajectory_{k}.{}", self.ext()));
        match self.format {
            Format::Csv => write_file(&path, &trajectory_csv(trajectory))?,
            Format::Json => write_file(&path, &to_json(&trajectory.records))?,
        }
        if let Some(d) = durations {
            let path = self.dir.join(format!("durations_{k}.{}", self.ext()));
            match self.format {
                Format::Csv => write_file(&path, &durations_csv(d))?,
                Format::Json => write_file(&path, &to_json(d))?,
            }
        }
        Ok(())
    }

    fn summary(&self, rows: &[SummaryRow]) -> Result<(), CliError> {
        let path = self.dir.join(format!("summary.{}", self.ext()));
        match self.format {
            Format::Json => write_file(&path, &to_json(rows)),
            Format::Csv => {
                let mut text = String::from("replicate,final_size,took_off,extinction_time\n");
                for r in rows {
                    text.push_str(&format!("{},{},{},{}\n", r.replicate, r.final_size, r.took_off, r.extinction_time));
                }
                write_file(&path, &text)
            }
        }
    }
}

fn one(plan: &Plan, writer: &Writer, k: u64, rng: &mut crate::model::SimRng) -> Result<SummaryRow, CliError> {
    let sim_err = |e: crate::Error| CliError::input(e.to_string());
    match plan {
        Plan::Closed { params, options } => {
            let res = simulate_with(params, options, rng).map_err(sim_err)?;
            writer.replicate(k, &res.trajectory, Some(&res.durations))?;
            Ok(SummaryRow {
                replicate: k,
                final_size: res.final_size,
                took_off: res.took_off,
                extinction_time: res.extinction_time,
            })
        }
        Plan::ReedFrost { s0, i0, p, threshold } => {
            let chain = simulate_reed_frost(*s0, *i0, *p, rng).map_err(sim_err)?;
            let n = s0 + i0;
            let records = chain
                .iter()
                .map(|c| Record {
                    t: c.generation as f64,
                    s: c.susceptible,
                    i: c.infected,
                    r: n - c.susceptible - c.infected,
                })
                .collect();
            writer.replicate(k, &Trajectory::from_records(records), None)?;
            let size = chain_final_size(&chain);
            Ok(SummaryRow {
                replicate: k,
                final_size: size,
                took_off: size as f64 > *threshold,
                extinction_time: chain.last().map_or(0.0, |c| c.generation as f64),
            })
        }
        Plan::Endemic { params, horizon, options } => {
            let seeded = params.clone().with_seed(SeedTree::new(params.seed).replicate(k).seed());
            let traj = simulate_endemic(&seeded, *horizon, options).map_err(sim_err)?;
            writer.replicate(k, &traj, None)?;
            let last = traj.last().copied().unwrap_or(Record { t: 0.0, s: 0, i: 0, r: 0 });
            Ok(SummaryRow {
                replicate: k,
                final_size: last.i,
                took_off: last.i > 0,
                extinction_time: last.t,
            })
        }
    }
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(invalid(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

pub fn run(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let plan = plan(args)?;
    let threads = thread_cap()?;
    fs::create_dir_all(&args.out.out).map_err(|e| CliError::io(format!("{}: {e}", args.out.out.display())))?;
    let writer = Writer { dir: args.out.out.clone(), format: args.format, summary_only: args.summary_only };
    let work = || {
        run_replicates_with(args.seed, args.replicates, |k, rng| Ok(one(&plan, &writer, k, rng)))
            .expect("replicate jobs report errors in their own result")
            .into_iter()
            .collect::<Result<Vec<_>, CliError>>()
    };
    let rows = match threads {
        None => work()?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::io(e.to_string()))?
            .install(work)?,
    };
    writer.summary(&rows)?;
    let takeoffs = rows.iter().filter(|r| r.took_off).count();
    emit(
        out,
        &format!(
            "wrote {} replicate(s) to {} ({} took off)\n",
            rows.len(),
            args.out.out.display(),
            takeoffs
        ),
    )
}
