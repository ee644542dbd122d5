use rand::Rng;
use rand_distr::{Distribution, Exp, Exp1};

use epikit::inference::{
    estimate_beta, estimate_infectious_period, estimate_r0_emerging, estimate_r0_temporal, model_fit_report,
    IncidenceSeries, TemporalData, TimeWindow, FIT_THRESHOLD,
};
use epikit::model::{EpidemicParams, GenerationTimeDist, InfectiousPeriodDist, Record, SeedTree, Trajectory};
use epikit::simulator::{run_replicates_with, simulate_sir, simulate_with, Engine, Recording, SimOptions};

#[test]
fn exponential_periods_average_to_their_mean() {
    let mut rng = SeedTree::new(1).stream(0);
    let durations: Vec<f64> = (0..10_000).map(|_| Exp1.sample(&mut rng)).collect();
    let data = TemporalData::new(10, vec![], vec![], vec![], vec![], durations).unwrap();
    let e = estimate_infectious_period(&data).unwrap();
    assert!((e.estimate - 1.0).abs() < 0.03, "{e:?}");
}

fn major_outbreak(seed: u64) -> (EpidemicParams, epikit::simulator::ReplicateResult) {
    for k in 0.. {
        let p = EpidemicParams::markov(10_000, 2.0, 1.0).with_seed(seed + k);
        let run = simulate_sir(&p, &SimOptions::default().with_engine(Engine::Markov)).unwrap();
        if run.took_off {
            return (p, run);
        }
    }
    unreachable!()
}

#[test]
fn temporal_estimates_on_a_full_outbreak() {
    let (_, run) = major_outbreak(100);
    let data = TemporalData::from_trajectory(&run.trajectory, run.durations.clone()).unwrap();
    let beta = estimate_beta(&data).unwrap();
    let period = estimate_infectious_period(&data).unwrap();
    let r0 = estimate_r0_temporal(&beta, &period);
    assert!((beta.estimate - 2.0).abs() <= 3.0 * beta.se.unwrap(), "{beta:?}");
    assert!((period.estimate - 1.0).abs() <= 3.0 * period.se.unwrap(), "{period:?}");
    assert!((r0.estimate - 2.0).abs() <= 3.0 * r0.se.unwrap(), "{r0:?}");
}

/// Mean growth rate and Lotka R0 over the take-off runs of an emerging
/// epidemic with exponential infectious periods of the given mean.
fn emerging(mean_period: f64, seed: u64) -> (f64, f64) {
    let r0 = 1.5;
    let p = EpidemicParams::new(200_000, r0 / mean_period, InfectiousPeriodDist::exponential(1.0 / mean_period))
        .with_seed(seed);
    let g = GenerationTimeDist::from_period(p.infectious_period.clone());
    let options = SimOptions::default()
        .with_engine(Engine::Markov)
        .with_recording(Recording::Full)
        .with_max_infections(2_000);
    let fits = run_replicates_with(p.seed, 300, |_, rng| {
        let run = simulate_with(&p, &options, rng)?;
        if !run.took_off {
            return Ok(None);
        }
        let series = IncidenceSeries::cumulative_infections(&run.trajectory, mean_period / 10.0)?;
        let (t, c): (Vec<f64>, Vec<f64>) = series
            .times
            .iter()
            .zip(&series.counts)
            .filter(|(_, c)| (30.0..2_000.0).contains(*c))
            .map(|(t, c)| (*t, *c))
            .unzip();
        let early = IncidenceSeries::new(t, c)?;
        let window = TimeWindow::all();
        let rho = epikit::inference::estimate_growth_rate(&early, window)?.estimate;
        Ok(Some((rho, estimate_r0_emerging(&early, &g, window)?.estimate)))
    })
    .unwrap();
    let fits: Vec<(f64, f64)> = fits.into_iter().flatten().collect();
    assert!(fits.len() >= 40, "only {} take-offs", fits.len());
    let k = fits.len() as f64;
    (fits.iter().map(|f| f.0).sum::<f64>() / k, fits.iter().map(|f| f.1).sum::<f64>() / k)
}

#[test]
fn two_diseases_same_r0_different_speed() {
    let (rho_fast, r0_fast) = emerging(3.0, 7);
    let (rho_slow, r0_slow) = emerging(7.0, 8);
    // Growth rates 0.5/3 and 0.5/7 per day.
    assert!((rho_fast - 1.0 / 6.0).abs() < 0.03, "{rho_fast}");
    assert!((rho_slow - 1.0 / 14.0).abs() < 0.015, "{rho_slow}");
    assert!(rho_fast > 1.8 * rho_slow);
    assert!((r0_fast - 1.5).abs() < 0.1, "{r0_fast}");
    assert!((r0_slow - 1.5).abs() < 0.1, "{r0_slow}");
    assert!((r0_fast - r0_slow).abs() < 0.1);
}

#[test]
fn self_fit_is_not_flagged() {
    let p = EpidemicParams::markov(10_000, 2.0, 1.0).with_initial_infectives(500).with_seed(5);
    let run = simulate_sir(&p, &SimOptions::default()).unwrap();
    let data = TemporalData::from_trajectory(&run.trajectory, run.durations.clone()).unwrap();
    let beta = estimate_beta(&data).unwrap().estimate;
    let period = estimate_infectious_period(&data).unwrap().estimate;
    let rep = model_fit_report(&data, beta, period);
    assert!(!rep.flagged, "{rep:?}");
    assert!(rep.max_discrepancy < FIT_THRESHOLD);
}

/// Two equally large groups with the given susceptibilities, mixing
/// homogeneously. Returns the pooled trajectory and the
/// completed infectious periods.
fn two_group_outbreak(n_per_group: u64, seed: u64, susceptibility: [f64; 2]) -> (Trajectory, Vec<f64>) {
    let mut rng = SeedTree::new(seed).stream(0);
    let n = 2 * n_per_group;
    let gamma = 1.0;
    let seeded = n_per_group / 20;
    let mut s = [n_per_group - seeded, n_per_group - seeded];
    let mut infected_at: Vec<f64> = vec![0.0; 2 * seeded as usize];
    let mut recovered = 0u64;
    let mut t = 0.0;
    let mut records = vec![Record { t, s: s[0] + s[1], i: infected_at.len() as u64, r: 0 }];
    let mut durations = Vec::new();
    while !infected_at.is_empty() {
        let i = infected_at.len() as f64;
        let inf = [susceptibility[0] * s[0] as f64 * i / n as f64, susceptibility[1] * s[1] as f64 * i / n as f64];
        let rec = gamma * i;
        let total = inf[0] + inf[1] + rec;
        t += Exp::new(total).unwrap().sample(&mut rng);
        let u = rng.random::<f64>() * total;
        if u < inf[0] {
            s[0] -= 1;
            infected_at.push(t);
        } else if u < inf[0] + inf[1] {
            s[1] -= 1;
            infected_at.push(t);
        } else {
            let k = rng.random_range(0..infected_at.len());
            durations.push(t - infected_at.swap_remove(k));
            recovered += 1;
        }
        records.push(Record { t, s: s[0] + s[1], i: infected_at.len() as u64, r: recovered });
    }
    (Trajectory::from_records(records), durations)
}

#[test]
fn heterogeneous_population_is_flagged() {
    let (traj, durations) = two_group_outbreak(5_000, 6, [4.0, 0.05]);
    let data = TemporalData::from_trajectory(&traj, durations).unwrap();
    let beta = estimate_beta(&data).unwrap().estimate;
    let period = estimate_infectious_period(&data).unwrap().estimate;
    let rep = model_fit_report(&data, beta, period);
    assert!(rep.flagged, "{rep:?}");
    assert!(rep.max_discrepancy > FIT_THRESHOLD);
}

