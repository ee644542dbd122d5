//! Markovian SIR with demography: susceptibles are born at rate `mu n` and
//! every individual dies at rate `mu` whatever its state.

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::{Recorder, Recording};
use crate::model::{EpidemicParams, EventKind, SeedTree, Trajectory};
use crate::theory;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndemicStart {
    /// Deterministic endemic point rounded to integers; falls back to
    /// `DiseaseFree` when `R0 <= 1`.
    Equilibrium,
    /// Everyone susceptible except the index cases and the immune fraction.
    DiseaseFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndemicOptions {
    pub start: EndemicStart,
    pub recording: Recording,
    /// End the run as soon as no one is infectious.
    pub stop_on_extinction: bool,
}

impl Default for EndemicOptions {
    fn default() -> Self {
        Self {
            start: EndemicStart::Equilibrium,
            recording: Recording::Auto,
            stop_on_extinction: true,
        }
    }
}

/// Gillespie simulation up to `horizon` (or disease extinction).
pub fn simulate_endemic(
    params: &EpidemicParams,
    horizon: f64,
    options: &EndemicOptions,
) -> Result<Trajectory> {
    if let Err(errors) = params.validate() {
        // A zero contact rate is a legitimate disease-free demography run.
        let rest: Vec<_> = errors
            .0
            .into_iter()
            .filter(|e| !(e.field == "beta" && params.beta == 0.0))
            .collect();
        if !rest.is_empty() {
            return Err(Error::Validation(crate::ValidationErrors(rest)));
        }
    }
    let gamma = params.gamma().ok_or_else(|| {
        Error::Unsupported("the endemic model needs an exponential infectious period".into())
    })?;
    let mu = params.death_rate;
    if !(mu > 0.0) {
        return Err(Error::domain("the endemic model needs death_rate > 0"));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::domain(format!("horizon must be > 0, got {horizon}")));
    }

    let n = params.n;
    let nf = n as f64;
    let beta = params.beta;
    let (mut s, mut i, mut r) = match options.start {
        EndemicStart::Equilibrium if params.r0() > 1.0 => {
            let (se, ie, _) = theory::endemic_level(beta, gamma, mu)?;
            let s = ((se * nf).round() as u64).min(n);
            let i = ((ie * nf).round() as u64).max(1).min(n - s);
            (s, i, n - s - i)
        }
        _ => (
            params.initially_susceptible(),
            params.initial_infectives,
            params.initially_immune(),
        ),
    };

    let mut rng = SeedTree::new(params.seed).stream(0);
    let mut rec = Recorder::new(options.recording.resolve(n), s, i, r);
    let birth = mu * nf;
    let mut t = 0.0;
    loop {
        if i == 0 && options.stop_on_extinction {
            break;
        }
        let (sf, if_, rf) = (s as f64, i as f64, r as f64);
        let rates = [
            birth,
            mu * sf,
            mu * if_,
            mu * rf,
            beta * sf * if_ / nf,
            gamma * if_,
        ];
        let total: f64 = rates.iter().sum();
        let t_next = t + rng.sample::<f64, _>(Exp1) / total;
        if t_next > horizon {
            rec.advance(horizon, s, i, r);
            t = horizon;
            break;
        }
        rec.advance(t_next, s, i, r);
        t = t_next;
        let mut u = rng.random::<f64>() * total;
        let mut which = rates.len() - 1;
        for (k, &a) in rates.iter().enumerate() {
            if u < a {
                which = k;
                break;
            }
            u -= a;
        }
        let kind = match which {
            0 => {
                s += 1;
                EventKind::Birth
            }
            1 => {
                s -= 1;
                EventKind::DeathS
            }
            2 => {
                i -= 1;
                EventKind::DeathI
            }
            3 => {
                r -= 1;
                EventKind::DeathR
            }
            4 => {
                s -= 1;
                i += 1;
                EventKind::Infection
            }
            _ => {
                i -= 1;
                r += 1;
                EventKind::Recovery
            }
        };
        rec.changed(t, s, i, r, kind);
    }
    Ok(rec.finish(t, s, i, r))
}
