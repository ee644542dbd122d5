use crate::error::{Error, Result};
use crate::model::{offspring_pgf, EpidemicParams, GenerationTimeDist, InfectiousPeriodDist};
use crate::numeric;

fn closed_population(params: &EpidemicParams) -> Result<()> {
    params.validate()?;
    if params.death_rate != 0.0 {
        return Err(Error::Unsupported(
            "branching approximation needs a closed population (death_rate = 0)".into(),
        ));
    }
    Ok(())
}

/// Probability that the branching process started by one infective dies out,
/// i.e. that the epidemic stays minor. 1 when `R0 <= 1`.
pub fn extinction_probability(params: &EpidemicParams) -> Result<f64> {
    closed_population(params)?;
    let r0 = params.r0();
    if r0 <= 1.0 {
        return Ok(1.0);
    }
    if let InfectiousPeriodDist::Exponential { .. } = params.infectious_period {
        return Ok(1.0 / r0);
    }
    let pgf = |z: f64| offspring_pgf(params, z);
    // Iterates increase monotonically to the smallest fixed point.
    let mut q = 0.0;
    let mut converged = false;
    for _ in 0..100_000 {
        let next = pgf(q)?;
        let step = next - q;
        q = next;
        if step.abs() < 1e-9 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "extinction fixed point".into(),
            iterations: 100_000,
        });
    }
    // h(z) = pgf(z) - z is convex, so Newton from the left never overshoots.
    for _ in 0..50 {
        let h = pgf(q)? - q;
        let dz = 1e-6;
        let (a, b) = ((q - dz).max(0.0), (q + dz).min(1.0));
        let slope = (pgf(b)? - pgf(a)?) / (b - a) - 1.0;
        if slope >= 0.0 {
            break;
        }
        let next = (q - h / slope).clamp(0.0, 1.0);
        let moved = (next - q).abs();
        q = next;
        if moved < 1e-15 {
            break;
        }
    }
    Ok(q)
}

/// Malthusian parameter: the root `rho > 0` of
/// `beta ∫ e^{-rho t} P(I > t) dt = 1`.
pub fn malthusian_rate(params: &EpidemicParams) -> Result<f64> {
    closed_population(params)?;
    let r0 = params.r0();
    if r0 <= 1.0 {
        return Err(Error::NotSupercritical { r0 });
    }
    let period = &params.infectious_period;
    if let InfectiousPeriodDist::Exponential { rate } = period {
        return Ok(params.beta - rate);
    }
    let lhs = |rho: f64| period.survival_transform(rho).map(|m| params.beta * m - 1.0);
    let mut hi = 1.0 / period.mean();
    let mut doublings = 0;
    while lhs(hi)? > 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::NoConvergence { what: "Malthusian bracket".into(), iterations: doublings });
        }
    }
    numeric::brent(|rho| lhs(rho).unwrap_or(f64::NAN), 0.0, hi, 1e-15)
}

/// Basic reproduction number implied by growth rate `rho` and generation-time
/// density `g`: `1 / ∫ e^{-rho t} g(t) dt`.
pub fn lotka_r0(rho: f64, g: &GenerationTimeDist) -> Result<f64> {
    if !rho.is_finite() {
        return Err(Error::domain(format!("growth rate must be finite, got {rho}")));
    }
    let transform = g.laplace(rho)?;
    if !(transform > 0.0) {
        return Err(Error::Divergent(format!("generation-time transform is {transform} at rho = {rho}")));
    }
    Ok(1.0 / transform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::solve_final_size;

    fn with_period(beta: f64, period: InfectiousPeriodDist) -> EpidemicParams {
        EpidemicParams::new(1000, beta, period)
    }

    #[test]
    fn subcritical_certain_extinction() {
        let p = EpidemicParams::markov(100, 0.8, 1.0);
        assert_eq!(extinction_probability(&p).unwrap(), 1.0);
        assert!(matches!(malthusian_rate(&p), Err(Error::NotSupercritical { .. })));
        let c = with_period(1.0, InfectiousPeriodDist::constant(1.0));
        assert_eq!(extinction_probability(&c).unwrap(), 1.0);
    }

    #[test]
    fn markovian_closed_forms() {
        let p = EpidemicParams::markov(100, 2.0, 1.0);
        assert_eq!(extinction_probability(&p).unwrap(), 0.5);
        assert_eq!(malthusian_rate(&p).unwrap(), 1.0);
        // The general iteration agrees with the closed form.
        let g = with_period(2.0, InfectiousPeriodDist::gamma(1.0, 1.0));
        assert!((extinction_probability(&g).unwrap() - 0.5).abs() < 1e-10);
        assert!((malthusian_rate(&g).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn constant_period_matches_final_size_root() {
        for k in 1..=90 {
            let r0 = 1.0 + 0.1 * k as f64;
            let p = with_period(r0, InfectiousPeriodDist::constant(1.0));
            let q = extinction_probability(&p).unwrap();
            assert!((1.0 - q - solve_final_size(r0, 1.0)).abs() < 1e-10, "r0 = {r0}");
        }
        let p = with_period(2.0, InfectiousPeriodDist::constant(1.0));
        assert!((1.0 - extinction_probability(&p).unwrap() - 0.7968).abs() < 1e-4);
    }

    #[test]
    fn constant_period_growth_rate() {
        let p = with_period(2.0, InfectiousPeriodDist::constant(1.0));
        let rho = malthusian_rate(&p).unwrap();
        assert!((rho - 1.593_624_260_040_04).abs() < 1e-10);
        assert!((2.0 * (1.0 - (-rho).exp()) / rho - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_period_growth_rate() {
        // Gamma(2, 2), beta = 2: (1 - (2/(2+rho))^2)/rho = 1/2, rho = sqrt(5) - 1.
        let p = with_period(2.0, InfectiousPeriodDist::gamma(2.0, 2.0));
        let rho = malthusian_rate(&p).unwrap();
        assert!((rho - 1.236_067_977_499_789_7).abs() < 1e-9);
    }

    #[test]
    fn near_critical_growth_is_small() {
        let p = EpidemicParams::markov(100, 1.0 + 1e-9, 1.0);
        let rho = malthusian_rate(&p).unwrap();
        assert!(rho > 0.0 && rho < 1e-8);
        let c = with_period(1.0 + 1e-6, InfectiousPeriodDist::constant(1.0));
        let rho = malthusian_rate(&c).unwrap();
        assert!(rho > 0.0 && rho < 1e-5);
    }

    #[test]
    fn lotka_closed_forms() {
        let exp = GenerationTimeDist::from_period(InfectiousPeriodDist::exponential(1.0));
        assert!((lotka_r0(1.0, &exp).unwrap() - 2.0).abs() < 1e-8);
        let unif = GenerationTimeDist::from_period(InfectiousPeriodDist::constant(1.0));
        let rho = 1.593_624_260_040_04_f64;
        let expected = rho / (1.0 - (-rho).exp());
        assert!((lotka_r0(rho, &unif).unwrap() - expected).abs() < 1e-8);
        assert!((expected - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_demography() {
        let p = EpidemicParams::markov(100, 2.0, 1.0).with_death_rate(0.1);
        assert!(matches!(extinction_probability(&p), Err(Error::Unsupported(_))));
    }
}
