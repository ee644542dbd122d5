use epikit::inference::{estimate_growth_rate, IncidenceSeries, TimeWindow};
use epikit::model::{EpidemicParams, InfectiousPeriodDist, SeedTree};
use epikit::oracle::final_size_distribution;
use epikit::simulator::{
    chain_final_size, run_replicates_with, simulate_endemic, simulate_reed_frost, simulate_sir, simulate_with,
    EndemicOptions, EndemicStart, Engine, Recording, SimOptions,
};
use epikit::theory::{integrate_sir, OdeGrid};

fn histogram(sizes: &[u64], bins: usize) -> Vec<f64> {
    let mut h = vec![0.0; bins];
    for &k in sizes {
        h[k as usize] += 1.0;
    }
    h
}

fn total_variation(counts: &[f64], exact: &[f64]) -> f64 {
    let total: f64 = counts.iter().sum();
    0.5 * counts.iter().zip(exact).map(|(c, e)| (c / total - e).abs()).sum::<f64>()
}

/// Two-sample chi-square homogeneity statistic over bins with data.
fn chi_square_two_sample(a: &[f64], b: &[f64]) -> (f64, usize) {
    let (na, nb): (f64, f64) = (a.iter().sum(), b.iter().sum());
    let mut stat = 0.0;
    let mut used = 0usize;
    for (x, y) in a.iter().zip(b) {
        let pooled = (x + y) / (na + nb);
        if pooled == 0.0 {
            continue;
        }
        used += 1;
        let (ex, ey) = (pooled * na, pooled * nb);
        stat += (x - ex).powi(2) / ex + (y - ey).powi(2) / ey;
    }
    (stat, used.saturating_sub(1))
}

fn final_sizes(p: &EpidemicParams, engine: Engine, reps: u64) -> Vec<u64> {
    let options = SimOptions::default().with_engine(engine).with_recording(Recording::Off);
    run_replicates_with(p.seed, reps, |_, rng| Ok(simulate_with(p, &options, rng)?.final_size)).unwrap()
}

#[test]
fn event_engine_and_gillespie_agree_in_law() {
    let base = EpidemicParams::markov(5, 2.5, 1.0);
    let a = histogram(&final_sizes(&base.clone().with_seed(1), Engine::EventDriven, 100_000), 5);
    let b = histogram(&final_sizes(&base.with_seed(2), Engine::Markov, 100_000), 5);
    let (stat, df) = chi_square_two_sample(&a, &b);
    assert_eq!(df, 4);
    // 0.999 quantile of chi-square with 4 degrees of freedom.
    assert!(stat < 18.47, "chi-square {stat}");
}

#[test]
fn different_seeds_are_independent() {
    let p = EpidemicParams::markov(5, 2.0, 1.0);
    let reps = 50_000;
    let a = final_sizes(&p.clone().with_seed(11), Engine::Markov, reps);
    let b = final_sizes(&p.with_seed(12), Engine::Markov, reps);
    let mut table = [[0.0f64; 5]; 5];
    for (x, y) in a.iter().zip(&b) {
        table[*x as usize][*y as usize] += 1.0;
    }
    let rows: Vec<f64> = table.iter().map(|r| r.iter().sum()).collect();
    let cols: Vec<f64> = (0..5).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let total = reps as f64;
    let mut stat = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            let e = rows[i] * cols[j] / total;
            if e > 0.0 {
                stat += (table[i][j] - e).powi(2) / e;
            }
        }
    }
    // 0.999 quantile of chi-square with 16 degrees of freedom.
    assert!(stat < 39.25, "chi-square {stat}");
}

#[test]
fn chain_binomial_matches_exact_law() {
    let exact = final_size_distribution(9, 1, 0.2).unwrap();
    let sizes = run_replicates_with(21, 100_000, |_, rng| Ok(chain_final_size(&simulate_reed_frost(9, 1, 0.2, rng)?))).unwrap();
    let tv = total_variation(&histogram(&sizes, 10), &exact);
    assert!(tv < 0.02, "total variation {tv}");
}

#[test]
fn chain_binomial_million_replicates() {
    let exact = final_size_distribution(5, 1, 0.3).unwrap();
    let sizes = run_replicates_with(22, 1_000_000, |_, rng| Ok(chain_final_size(&simulate_reed_frost(5, 1, 0.3, rng)?))).unwrap();
    let tv = total_variation(&histogram(&sizes, 6), &exact);
    assert!(tv < 0.005, "total variation {tv}");
}

#[test]
fn continuous_reed_frost_matches_chain_binomial() {
    let (n, p) = (6u64, 0.25_f64);
    let beta = -(n as f64) * (1.0 - p).ln();
    let params = EpidemicParams::new(n, beta, InfectiousPeriodDist::constant(1.0)).with_seed(23);
    let sizes = final_sizes(&params, Engine::EventDriven, 100_000);
    let tv = total_variation(&histogram(&sizes, 6), &final_size_distribution(5, 1, p).unwrap());
    assert!(tv < 0.02, "total variation {tv}");
}

/// Largest gap between the replicate mean of I(t)/n and the ODE solution.
fn mean_curve_gap(n: u64, reps: u64) -> f64 {
    let p = EpidemicParams::markov(n, 2.0, 1.0).with_initial_infectives(n / 20).with_seed(31);
    let options = SimOptions::default().with_recording(Recording::Grid(0.25));
    let grid: Vec<f64> = (0..=60).map(|k| k as f64 * 0.25).collect();
    let curves = run_replicates_with(p.seed, reps, |_, rng| {
        let run = simulate_with(&p, &options, rng)?;
        Ok(grid
            .iter()
            .map(|&t| run.trajectory.state_at(t).map_or(0.0, |r| r.i as f64 / n as f64))
            .collect::<Vec<_>>())
    })
    .unwrap();
    let ode = integrate_sir(2.0, 1.0, [0.95, 0.05, 0.0], OdeGrid::new(15.0).with_step(1e-3)).unwrap();
    grid.iter()
        .enumerate()
        .map(|(k, &t)| {
            let mean = curves.iter().map(|c| c[k]).sum::<f64>() / reps as f64;
            (mean - ode.at(t).i).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn mean_prevalence_tracks_the_deterministic_curve() {
    let small = mean_curve_gap(1_000, 100);
    let large = mean_curve_gap(10_000, 100);
    assert!(large < 0.01, "gap at n = 1e4: {large}");
    assert!(large < small, "gap did not shrink: {small} -> {large}");
}

#[test]
fn early_prevalence_grows_at_the_malthusian_rate() {
    let p = EpidemicParams::markov(100_000, 2.0, 1.0).with_seed(32);
    let options = SimOptions::default().with_recording(Recording::Full).with_max_infections(1000);
    let slopes = run_replicates_with(p.seed, 200, |_, rng| {
        let run = simulate_with(&p, &options, rng)?;
        if !run.took_off {
            return Ok(None);
        }
        let grid_step = 0.1;
        let (mut times, mut prevalence) = (Vec::new(), Vec::new());
        let mut k = 0;
        while let Some(rec) = run.trajectory.state_at(k as f64 * grid_step) {
            let t = k as f64 * grid_step;
            if t > run.extinction_time {
                break;
            }
            let cumulative = (p.n - 1 - rec.s) + 1;
            if cumulative >= 1000 {
                break;
            }
            if rec.i >= 10 {
                times.push(t);
                prevalence.push(rec.i as f64);
            }
            k += 1;
        }
        let series = IncidenceSeries::new(times, prevalence)?;
        Ok(Some(estimate_growth_rate(&series, TimeWindow::all())?.estimate))
    })
    .unwrap();
    let slopes: Vec<f64> = slopes.into_iter().flatten().collect();
    let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    assert!(slopes.len() >= 20);
    assert!((mean - 1.0).abs() <= 0.15, "mean slope {mean}");
}

#[test]
fn lone_index_case_in_a_population_of_one() {
    let p = EpidemicParams::markov(1, 2.0, 1.0).with_seed(3);
    let run = simulate_sir(&p, &SimOptions::default()).unwrap();
    assert_eq!(run.final_size, 0);
    let recs = &run.trajectory.records;
    assert_eq!((recs[0].s, recs[0].i, recs[0].r), (0, 1, 0));
    assert_eq!((recs[1].s, recs[1].i, recs[1].r), (0, 0, 1));
}

fn endemic(beta: f64, n: u64, seed: u64) -> EpidemicParams {
    EpidemicParams::markov(n, beta, 1.0).with_death_rate(1.0 / 75.0).with_seed(seed)
}

#[test]
fn endemic_without_transmission() {
    let p = endemic(0.0, 2_000, 41).with_initial_infectives(50);
    let options = EndemicOptions { start: EndemicStart::DiseaseFree, stop_on_extinction: false, recording: Recording::Grid(1.0) };
    let traj = simulate_endemic(&p, 300.0, &options).unwrap();
    assert_eq!(traj.last().unwrap().i, 0);
    let mean_s = traj.time_average(100.0, 300.0, |r| r.s as f64).unwrap();
    assert!((mean_s / 2_000.0 - 1.0).abs() < 0.05, "{mean_s}");
}

#[test]
fn subcritical_endemic_dies_out() {
    // R0 = beta / (gamma + mu) = 0.8.
    let beta = 0.8 * (1.0 + 1.0 / 75.0);
    let p = endemic(beta, 5_000, 42).with_initial_infectives(20);
    let options = EndemicOptions { start: EndemicStart::DiseaseFree, stop_on_extinction: true, recording: Recording::Full };
    let traj = simulate_endemic(&p, 1_000.0, &options).unwrap();
    let last = traj.last().unwrap();
    assert_eq!(last.i, 0);
    assert!(last.t < 100.0, "extinction at {}", last.t);
    let mean_s = traj.time_average(0.0, last.t, |r| r.s as f64 / r.total() as f64).unwrap();
    assert!(mean_s > 0.98, "{mean_s}");
}

#[test]
fn endemic_susceptible_level() {
    let n = 100_000;
    let p = endemic(2.0, n, 43);
    let options = EndemicOptions { recording: Recording::Grid(1.0), ..EndemicOptions::default() };
    let traj = simulate_endemic(&p, 1_500.0, &options).unwrap();
    assert!(traj.last().unwrap().t >= 1_500.0, "disease went extinct");
    let mean_s = traj.time_average(300.0, 1_500.0, |r| r.s as f64 / r.total() as f64).unwrap();
    assert!((mean_s - 0.506_666).abs() < 0.02, "{mean_s}");
    // Population stays within six birth-death standard deviations of n.
    let sd = (n as f64).sqrt();
    assert!(traj.records.iter().all(|r| (r.total() as f64 - n as f64).abs() < 6.0 * sd));
}

#[test]
fn replicate_streams_do_not_collide() {
    let root = SeedTree::new(99);
    let a = root.replicate(0).seed();
    let b = root.replicate(1).seed();
    assert_ne!(a, b);
    assert_ne!(SeedTree::new(a).seed(), SeedTree::new(b).seed());
}
