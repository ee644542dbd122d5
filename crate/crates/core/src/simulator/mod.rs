//! Exact stochastic engines.
//!
//! * [`simulate_sir`]: event-driven SIR for any infectious-period law.
//! * [`simulate_markov`]: rate-based Gillespie simulation of the Markovian SIR.
//! * [`simulate_reed_frost`]: the discrete-time chain binomial.
//! * [`simulate_endemic`]: Markovian SIR with births and deaths.
//! * [`run_replicates`]: independent, reproducibly seeded repetitions.

mod endemic;
mod event;
mod markov;
mod reed_frost;
mod replicates;

pub use endemic::{simulate_endemic, EndemicOptions, EndemicStart};
pub use event::simulate_sir;
pub use markov::simulate_markov;
pub use reed_frost::{chain_final_size, simulate_reed_frost, ChainState};
pub use replicates::{run_replicates, run_replicates_with, FinalSizeStats, ReplicateSet, ReplicateSummary};

use serde::{Deserialize, Serialize};

use crate::model::{EpidemicParams, EventKind, SimRng, Trajectory};
use crate::Result;

/// Largest population for which [`Recording::Auto`] keeps the full event log.
pub const FULL_LOG_LIMIT: u64 = 10_000;
/// Snapshot spacing used by [`Recording::Auto`] above [`FULL_LOG_LIMIT`].
pub const DEFAULT_GRID_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Recording {
    /// Full log up to [`FULL_LOG_LIMIT`], 0.1-spaced snapshots above.
    Auto,
    /// A record after every state change, plus the event log.
    Full,
    /// Snapshots every `step` time units plus the final state.
    Grid(f64),
    /// Initial and final state only.
    Off,
}

impl Recording {
    pub(crate) fn resolve(self, n: u64) -> Recording {
        match self {
            Recording::Auto if n <= FULL_LOG_LIMIT => Recording::Full,
            Recording::Auto => Recording::Grid(DEFAULT_GRID_STEP),
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Engine {
    /// Priority-queue engine; exact for every infectious-period law.
    EventDriven,
    /// Gillespie direct method; exponential infectious periods only.
    Markov,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub engine: Engine,
    pub recording: Recording,
    /// Overrides [`default_takeoff_threshold`].
    pub takeoff_threshold: Option<f64>,
    /// Stop once this many infections (index cases excluded) have occurred.
    pub max_infections: Option<u64>,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            engine: Engine::EventDriven,
            recording: Recording::Auto,
            takeoff_threshold: None,
            max_infections: None,
        }
    }
}

impl SimOptions {
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_recording(mut self, recording: Recording) -> Self {
        self.recording = recording;
        self
    }

    pub fn with_max_infections(mut self, cap: u64) -> Self {
        self.max_infections = Some(cap);
        self
    }

    pub fn with_takeoff_threshold(mut self, threshold: f64) -> Self {
        self.takeoff_threshold = Some(threshold);
        self
    }

    pub(crate) fn threshold(&self, n: u64) -> f64 {
        self.takeoff_threshold
            .unwrap_or_else(|| default_takeoff_threshold(n))
    }
}

/// Final sizes above `max(10, 0.1 √n ln n)` count as major outbreaks.
pub fn default_takeoff_threshold(n: u64) -> f64 {
    let n = n as f64;
    (0.1 * n.sqrt() * n.ln()).max(10.0)
}

/// Outcome of one closed-population run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateResult {
    pub trajectory: Trajectory,
    /// Infections among the initially susceptible.
    pub final_size: u64,
    /// Time of the last recovery (time stopped if truncated).
    pub extinction_time: f64,
    pub took_off: bool,
    /// Completed infectious periods, in order of recovery.
    pub durations: Vec<f64>,
    /// Set when the run stopped at `max_infections` with infectives left.
    pub truncated: bool,
}

impl ReplicateResult {
    /// Final size over the initially susceptible count.
    pub fn final_fraction(&self, params: &EpidemicParams) -> f64 {
        let s0 = params.initially_susceptible();
        if s0 == 0 {
            0.0
        } else {
            self.final_size as f64 / s0 as f64
        }
    }
}

/// Dispatches on `options.engine` with an explicit random stream.
pub fn simulate_with(
    params: &EpidemicParams,
    options: &SimOptions,
    rng: &mut SimRng,
) -> Result<ReplicateResult> {
    match options.engine {
        Engine::EventDriven => event::run(params, options, rng),
        Engine::Markov => markov::run(params, options, rng),
    }
}

/// Shared recording logic for the engines.
pub(crate) struct Recorder {
    mode: Recording,
    grid_index: u64,
    pub(crate) trajectory: Trajectory,
}

impl Recorder {
    pub(crate) fn new(mode: Recording, s: u64, i: u64, r: u64) -> Self {
        let mut trajectory = Trajectory::new(matches!(mode, Recording::Full));
        trajectory.push(0.0, s, i, r);
        Self {
            mode,
            grid_index: 1,
            trajectory,
        }
    }

    /// Call before applying an event at time `t`, with the state still in
    /// force just before it.
    pub(crate) fn advance(&mut self, t: f64, s: u64, i: u64, r: u64) {
        if let Recording::Grid(step) = self.mode {
            loop {
                let g = self.grid_index as f64 * step;
                if g >= t {
                    break;
                }
                self.trajectory.push(g, s, i, r);
                self.grid_index += 1;
            }
        }
    }

    /// Call after applying an event at time `t`.
    pub(crate) fn changed(&mut self, t: f64, s: u64, i: u64, r: u64, kind: EventKind) {
        if let Recording::Full = self.mode {
            self.trajectory.push(t, s, i, r);
            self.trajectory.log(t, kind);
        }
    }

    /// Closes the path with the state at the stopping time `t`.
    pub(crate) fn finish(mut self, t: f64, s: u64, i: u64, r: u64) -> Trajectory {
        let last_t = self.trajectory.last().map_or(0.0, |rec| rec.t);
        self.trajectory.push(t.max(last_t), s, i, r);
        self.trajectory
    }
}
