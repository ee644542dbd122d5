//! Event-driven SIR: every infective emits contacts as a Poisson process of
//! rate `beta` over its own infectious period; each contact hits a uniformly
//! chosen member of the population.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::{Recorder, ReplicateResult, SimOptions};
use crate::model::{EpidemicParams, EventKind, SeedTree, SimRng};
use crate::Result;

#[derive(Debug, Clone, Copy)]
enum Pending {
    /// Next contact of an infective whose period ends at `until`.
    Contact { until: f64 },
    Recovery { infected_at: f64 },
}

#[derive(Debug)]
struct Scheduled {
    t: f64,
    seq: u64,
    what: Pending,
}

impl PartialEq for Scheduled {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Scheduled {}
impl PartialOrd for Scheduled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
// Min-heap on (t, seq).
impl Ord for Scheduled {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .t
            .total_cmp(&self.t)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Queue {
    heap: BinaryHeap<Scheduled>,
    seq: u64,
}

impl Queue {
    fn push(&mut self, t: f64, what: Pending) {
        self.seq += 1;
        self.heap.push(Scheduled {
            t,
            seq: self.seq,
            what,
        });
    }
}

/// One realisation of the SIR epidemic with the stream seeded by `params.seed`.
pub fn simulate_sir(params: &EpidemicParams, options: &SimOptions) -> Result<ReplicateResult> {
    let mut rng = SeedTree::new(params.seed).stream(0);
    super::simulate_with(params, options, &mut rng)
}

pub(crate) fn run(
    params: &EpidemicParams,
    options: &SimOptions,
    rng: &mut SimRng,
) -> Result<ReplicateResult> {
    params.validate()?;
    if params.death_rate != 0.0 {
        return Err(crate::Error::Unsupported(
            "the outbreak engines model a closed population; use simulate_endemic".into(),
        ));
    }
    let n = params.n;
    let beta = params.beta;
    let period = params.infectious_period.sampler();
    let cap = options.max_infections.unwrap_or(u64::MAX);

    let mut s = params.initially_susceptible();
    let mut i = params.initial_infectives;
    let mut r = params.initially_immune();
    let mut rec = Recorder::new(options.recording.resolve(n), s, i, r);
    let mut queue = Queue {
        heap: BinaryHeap::new(),
        seq: 0,
    };
    let mut durations = Vec::new();

    let infect = |t: f64, queue: &mut Queue, rng: &mut SimRng| {
        let until = t + period.sample(rng);
        queue.push(until, Pending::Recovery { infected_at: t });
        let gap: f64 = rng.sample::<f64, _>(Exp1) / beta;
        if t + gap < until {
            queue.push(t + gap, Pending::Contact { until });
        }
    };

    // Index cases start a fresh infectious period at t = 0.
    for _ in 0..i {
        infect(0.0, &mut queue, rng);
    }

    let mut infections = 0u64;
    let mut t_now = 0.0;
    let mut truncated = false;
    while let Some(Scheduled { t, what, .. }) = queue.heap.pop() {
        if infections >= cap {
            truncated = true;
            break;
        }
        t_now = t;
        match what {
            Pending::Contact { until } => {
                if rng.random_range(0..n) < s {
                    rec.advance(t, s, i, r);
                    s -= 1;
                    i += 1;
                    infections += 1;
                    rec.changed(t, s, i, r, EventKind::Infection);
                    infect(t, &mut queue, rng);
                }
                let gap: f64 = rng.sample::<f64, _>(Exp1) / beta;
                if t + gap < until {
                    queue.push(t + gap, Pending::Contact { until });
                }
            }
            Pending::Recovery { infected_at } => {
                rec.advance(t, s, i, r);
                i -= 1;
                r += 1;
                durations.push(t - infected_at);
                rec.changed(t, s, i, r, EventKind::Recovery);
            }
        }
    }

    let threshold = options.threshold(n);
    Ok(ReplicateResult {
        trajectory: rec.finish(t_now, s, i, r),
        final_size: infections,
        extinction_time: t_now,
        took_off: infections as f64 > threshold,
        durations,
        truncated,
    })
}
