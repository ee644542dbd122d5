use super::TemporalData;
use crate::error::{Error, Result};
use crate::model::EstimateWithSE;
use crate::numeric;

/// Mean of the observed infectious periods, with standard error `sd / sqrt(k)`.
pub fn estimate_infectious_period(data: &TemporalData) -> Result<EstimateWithSE> {
    let d = &data.durations;
    let k = d.len();
    if k < 2 {
        return Err(Error::InsufficientData(format!("need at least 2 infectious periods, got {k}")));
    }
    let kf = k as f64;
    let mean = d.iter().copied().collect::<numeric::NeumaierSum>().value() / kf;
    let ss: f64 = d.iter().map(|x| (x - mean).powi(2)).sum();
    let sd = (ss / (kf - 1.0)).sqrt();
    Ok(EstimateWithSE::with_se(mean, sd / kf.sqrt(), "sample mean"))
}

/// Infection rate from the drop in susceptibles over the window divided by
/// the accumulated infection pressure `∫ S I du` (trapezoidal rule on the
/// observed grid).
///
/// The standard error is the counting-process approximation
/// `beta / sqrt(number of infections observed)`.
pub fn estimate_beta(data: &TemporalData) -> Result<EstimateWithSE> {
    if data.times.len() < 2 {
        return Err(Error::InsufficientData("need at least two observation times".into()));
    }
    let pressure: Vec<f64> = data.s.iter().zip(&data.i).map(|(s, i)| s * i).collect();
    let denominator = numeric::trapezoid(&data.times, &pressure);
    if !(denominator > 0.0) {
        return Err(Error::InsufficientData("no infection pressure observed (integral of S I is zero)".into()));
    }
    let drop = data.s[0] - data.s[data.s.len() - 1];
    let beta = drop / denominator;
    let infections = (drop * data.n as f64).round();
    const METHOD: &str = "martingale (counting-process standard error)";
    if infections < 1.0 {
        return Ok(EstimateWithSE::point(beta, METHOD));
    }
    Ok(EstimateWithSE::with_se(beta, beta / infections.sqrt(), METHOD))
}

/// `R0 = beta E(I)` from the two temporal estimates; delta-method standard
/// error treating them as independent.
pub fn estimate_r0_temporal(beta: &EstimateWithSE, mean_period: &EstimateWithSE) -> EstimateWithSE {
    let r0 = beta.estimate * mean_period.estimate;
    const METHOD: &str = "temporal product";
    match (beta.se, mean_period.se) {
        (Some(sb), Some(se)) => {
            let var = (mean_period.estimate * sb).powi(2) + (beta.estimate * se).powi(2);
            EstimateWithSE::with_se(r0, var.sqrt(), METHOD)
        }
        _ => EstimateWithSE::point(r0, METHOD),
    }
}
