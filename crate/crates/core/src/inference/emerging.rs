use super::{IncidenceSeries, TimeWindow};
use crate::error::{Error, Result};
use crate::model::{EstimateWithSE, GenerationTimeDist};
use crate::numeric;
use crate::theory::lotka_r0;

/// Exponential growth rate as the OLS slope of log counts on time inside
/// `window`. Zero counts are dropped.
pub fn estimate_growth_rate(series: &IncidenceSeries, window: TimeWindow) -> Result<EstimateWithSE> {
    let (t, c) = series.positive_in(window);
    if t.is_empty() {
        return Err(Error::InsufficientData("no positive counts in the window".into()));
    }
    let logs: Vec<f64> = c.iter().map(|x| x.ln()).collect();
    let fit = numeric::ols(&t, &logs)?;
    Ok(EstimateWithSE::with_se(fit.slope, fit.slope_se, "log-linear least squares"))
}

const H: f64 = 1e-5;

/// `R0 = 1 / L(rho)` with `L` the Laplace transform of the generation-time
/// density and `rho` the estimated growth rate; delta-method standard error.
pub fn estimate_r0_emerging(
    series: &IncidenceSeries,
    g: &GenerationTimeDist,
    window: TimeWindow,
) -> Result<EstimateWithSE> {
    let rho = estimate_growth_rate(series, window)?;
    let r0 = lotka_r0(rho.estimate, g)?;
    let slope = (g.laplace(rho.estimate + H)? - g.laplace(rho.estimate - H)?) / (2.0 * H);
    let transform = 1.0 / r0;
    let se = slope.abs() / (transform * transform) * rho.se.unwrap_or(0.0);
    Ok(EstimateWithSE::with_se(r0, se, "growth rate and generation time (delta method)"))
}
