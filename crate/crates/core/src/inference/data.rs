use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Trajectory;

/// Epidemic observed through `(S, I, R)` fractions on a time grid, plus the
/// completed infectious periods seen in the window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemporalData {
    pub n: u64,
    pub times: Vec<f64>,
    pub s: Vec<f64>,
    pub i: Vec<f64>,
    pub r: Vec<f64>,
    pub durations: Vec<f64>,
}

impl TemporalData {
    pub fn new(
        n: u64,
        times: Vec<f64>,
        s: Vec<f64>,
        i: Vec<f64>,
        r: Vec<f64>,
        durations: Vec<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("population size must be >= 1"));
        }
        let m = times.len();
        if s.len() != m || i.len() != m || r.len() != m {
            return Err(Error::domain("time grid and fraction columns differ in length"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::domain("time grid must be finite and strictly increasing"));
        }
        if [&s, &i, &r].iter().any(|col| col.iter().any(|x| !(0.0..=1.0).contains(x))) {
            return Err(Error::domain("fractions must lie in [0, 1]"));
        }
        if durations.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::domain("durations must be finite and >= 0"));
        }
        Ok(Self { n, times, s, i, r, durations })
    }

    /// Fractions from a simulated trajectory; `n` is read off the first record.
    pub fn from_trajectory(trajectory: &Trajectory, durations: Vec<f64>) -> Result<Self> {
        let n = trajectory
            .first()
            .map(|r| r.total())
            .ok_or_else(|| Error::InsufficientData("empty trajectory".into()))?;
        let nf = n as f64;
        let recs = &trajectory.records;
        Self::new(
            n,
            recs.iter().map(|r| r.t).collect(),
            recs.iter().map(|r| r.s as f64 / nf).collect(),
            recs.iter().map(|r| r.i as f64 / nf).collect(),
            recs.iter().map(|r| r.r as f64 / nf).collect(),
            durations,
        )
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Closed time interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub start: f64,
    pub end: f64,
}

impl TimeWindow {
    pub fn new(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    pub fn all() -> Self {
        Self { start: f64::NEG_INFINITY, end: f64::INFINITY }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t <= self.end
    }
}

/// Reported case counts at strictly increasing times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidenceSeries {
    pub times: Vec<f64>,
    pub counts: Vec<f64>,
}

impl IncidenceSeries {
    pub fn new(times: Vec<f64>, counts: Vec<f64>) -> Result<Self> {
        if times.len() != counts.len() {
            return Err(Error::domain("times and counts differ in length"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::domain("times must be finite and strictly increasing"));
        }
        if counts.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::domain("counts must be finite and >= 0"));
        }
        Ok(Self { times, counts })
    }

    /// Cumulative number ever infected (initial infectives included), sampled
    /// every `step` time units from the start of the trajectory.
    pub fn cumulative_infections(trajectory: &Trajectory, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::domain("sampling step must be > 0"));
        }
        let first = trajectory
            .first()
            .ok_or_else(|| Error::InsufficientData("empty trajectory".into()))?;
        let end = trajectory.last().map_or(first.t, |r| r.t);
        let (s0, i0) = (first.s, first.i);
        let mut times = Vec::new();
        let mut counts = Vec::new();
        let mut k = 0u64;
        loop {
            let t = first.t + k as f64 * step;
            if t > end {
                break;
            }
            let rec = trajectory.state_at(t).unwrap_or(first);
            times.push(t);
            counts.push((s0 - rec.s + i0) as f64);
            k += 1;
        }
        Self::new(times, counts)
    }

    /// Points with time in `window` and a positive count.
    pub(crate) fn positive_in(&self, window: TimeWindow) -> (Vec<f64>, Vec<f64>) {
        self.times
            .iter()
            .zip(&self.counts)
            .filter(|(t, c)| window.contains(**t) && **c > 0.0)
            .map(|(t, c)| (*t, *c))
            .unzip()
    }
}
