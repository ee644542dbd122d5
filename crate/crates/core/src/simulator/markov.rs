//! Gillespie direct method for the Markovian SIR: infection at rate
//! `beta S I / n`, recovery at rate `gamma I`.

use rand::Rng;
use rand_distr::Exp1;

use super::{Recorder, ReplicateResult, SimOptions};
use crate::model::{EpidemicParams, EventKind, SeedTree, SimRng};
use crate::{Error, Result};

/// Rate-based simulation of the Markovian SIR, seeded by `params.seed`.
pub fn simulate_markov(params: &EpidemicParams, options: &SimOptions) -> Result<ReplicateResult> {
    let mut rng = SeedTree::new(params.seed).stream(0);
    run(params, options, &mut rng)
}

pub(crate) fn run(
    params: &EpidemicParams,
    options: &SimOptions,
    rng: &mut SimRng,
) -> Result<ReplicateResult> {
    params.validate()?;
    let gamma = params.gamma().ok_or_else(|| {
        Error::Unsupported("the Markov engine needs an exponential infectious period".into())
    })?;
    if params.death_rate != 0.0 {
        return Err(Error::Unsupported(
            "the outbreak engines model a closed population; use simulate_endemic".into(),
        ));
    }
    let n = params.n;
    let nf = n as f64;
    let beta = params.beta;
    let cap = options.max_infections.unwrap_or(u64::MAX);

    let mut s = params.initially_susceptible();
    let mut i = params.initial_infectives;
    let mut r = params.initially_immune();
    let mut rec = Recorder::new(options.recording.resolve(n), s, i, r);
    // Infection times of current infectives, to report completed durations.
    let mut infected_at = vec![0.0; i as usize];
    let mut durations = Vec::new();

    let mut t = 0.0;
    let mut infections = 0u64;
    let mut truncated = false;
    while i > 0 {
        if infections >= cap {
            truncated = true;
            break;
        }
        let a_inf = beta * s as f64 * i as f64 / nf;
        let a_rec = gamma * i as f64;
        let total = a_inf + a_rec;
        let dt: f64 = rng.sample::<f64, _>(Exp1) / total;
        let t_next = t + dt;
        rec.advance(t_next, s, i, r);
        t = t_next;
        if rng.random::<f64>() * total < a_inf {
            s -= 1;
            i += 1;
            infections += 1;
            infected_at.push(t);
            rec.changed(t, s, i, r, EventKind::Infection);
        } else {
            let k = rng.random_range(0..infected_at.len());
            durations.push(t - infected_at.swap_remove(k));
            i -= 1;
            r += 1;
            rec.changed(t, s, i, r, EventKind::Recovery);
        }
    }

    Ok(ReplicateResult {
        trajectory: rec.finish(t, s, i, r),
        final_size: infections,
        extinction_time: t,
        took_off: infections as f64 > options.threshold(n),
        durations,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InfectiousPeriodDist;

    #[test]
    fn needs_exponential_period() {
        let p = EpidemicParams::new(10, 1.0, InfectiousPeriodDist::constant(1.0));
        assert!(matches!(
            simulate_markov(&p, &SimOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn conserves_population() {
        let p = EpidemicParams::markov(300, 2.0, 1.0)
            .with_initial_infectives(2)
            .with_seed(8);
        let res = simulate_markov(&p, &SimOptions::default()).unwrap();
        assert!(res.trajectory.times_increasing());
        assert!(res.trajectory.records.iter().all(|r| r.total() == 300));
        assert_eq!(res.trajectory.last().unwrap().i, 0);
        assert_eq!(res.durations.len() as u64, res.final_size + 2);
        let events = res.trajectory.events.as_ref().unwrap();
        assert_eq!(events.len() as u64, 2 * res.final_size + 2);
    }
}
