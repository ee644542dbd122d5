use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{simulate_with, ReplicateResult, SimOptions};
use crate::model::{EpidemicParams, SeedTree, SimRng};
use crate::Result;

/// Running final-size statistics; `merge` is associative so partial results
/// from different workers can be combined in any grouping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FinalSizeStats {
    pub replicates: u64,
    pub takeoffs: u64,
    /// Sum and sum of squares of the final fraction over take-offs.
    pub sum: f64,
    pub sum_sq: f64,
}

impl FinalSizeStats {
    pub fn observe(&mut self, took_off: bool, final_fraction: f64) {
        self.replicates += 1;
        if took_off {
            self.takeoffs += 1;
            self.sum += final_fraction;
            self.sum_sq += final_fraction * final_fraction;
        }
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            replicates: self.replicates + other.replicates,
            takeoffs: self.takeoffs + other.takeoffs,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn summary(&self) -> ReplicateSummary {
        let k = self.takeoffs as f64;
        let mean = (self.takeoffs > 0).then(|| self.sum / k);
        let sd = mean.map(|m| {
            if self.takeoffs < 2 {
                0.0
            } else {
                ((self.sum_sq - k * m * m) / (k - 1.0)).max(0.0).sqrt()
            }
        });
        ReplicateSummary {
            replicates: self.replicates,
            takeoffs: self.takeoffs,
            takeoff_fraction: if self.replicates == 0 {
                0.0
            } else {
                k / self.replicates as f64
            },
            mean_final_fraction: mean,
            sd_final_fraction: sd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicateSummary {
    pub replicates: u64,
    pub takeoffs: u64,
    pub takeoff_fraction: f64,
    /// Mean final fraction among replicates that took off.
    pub mean_final_fraction: Option<f64>,
    pub sd_final_fraction: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ReplicateSet {
    pub results: Vec<ReplicateResult>,
    pub summary: ReplicateSummary,
}

/// Runs `count` independent replicates on the current rayon pool. Replicate
/// `k` draws from `SeedTree::new(params.seed).replicate(k)`, so the output
/// does not depend on the number of workers.
pub fn run_replicates(
    params: &EpidemicParams,
    count: u64,
    options: &SimOptions,
) -> Result<ReplicateSet> {
    params.validate()?;
    let results = run_replicates_with(params.seed, count, |_, rng| {
        simulate_with(params, options, rng)
    })?;
    let stats = results.iter().fold(FinalSizeStats::default(), |mut acc, r| {
        acc.observe(r.took_off, r.final_fraction(params));
        acc
    });
    Ok(ReplicateSet {
        results,
        summary: stats.summary(),
    })
}

/// Generic replicate fan-out: `job(k, rng)` receives replicate `k`'s own
/// stream. Results come back in replicate order.
pub fn run_replicates_with<T, F>(seed: u64, count: u64, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &mut SimRng) -> Result<T> + Sync,
{
    let root = SeedTree::new(seed);
    (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = root.replicate(k).stream(0);
            job(k, &mut rng)
        })
        .collect()
}
