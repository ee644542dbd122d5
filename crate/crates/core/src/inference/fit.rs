use serde::{Deserialize, Serialize};

use super::TemporalData;
use crate::theory::{integrate_sir, OdeGrid};

/// Largest pointwise discrepancy tolerated before a fit is flagged.
pub const FIT_THRESHOLD: f64 = 0.05;

/// Discrepancy between observed fractions and the deterministic curve fitted
/// with the estimated parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelFitReport {
    /// Largest absolute difference over all grid points and compartments.
    pub max_discrepancy: f64,
    /// Root mean square difference over all grid points and compartments.
    pub l2_discrepancy: f64,
    pub points: usize,
    pub flagged: bool,
}

/// Integrates the closed SIR system from the first observed state with
/// `beta_hat` and `gamma = 1 / mean_period_hat` and compares it to the data.
pub fn model_fit_report(data: &TemporalData, beta_hat: f64, mean_period_hat: f64) -> ModelFitReport {
    let empty = ModelFitReport { max_discrepancy: 0.0, l2_discrepancy: 0.0, points: 0, flagged: false };
    if data.is_empty() {
        return empty;
    }
    let t0 = data.times[0];
    let horizon = data.times[data.times.len() - 1] - t0;
    let total = data.s[0] + data.i[0] + data.r[0];
    let init = [data.s[0] / total, data.i[0] / total, data.r[0] / total];
    let step = (horizon / 1e6).max(1e-3);
    let steps = (horizon / step).ceil() as usize;
    let grid = OdeGrid::new(horizon).with_step(step).with_save_every((steps / 20_000).max(1));
    let curve = match integrate_sir(beta_hat, 1.0 / mean_period_hat, init, grid) {
        Ok(c) => c,
        Err(_) => {
            return ModelFitReport { max_discrepancy: f64::INFINITY, l2_discrepancy: f64::INFINITY, points: data.times.len(), flagged: true }
        }
    };
    let mut max = 0.0_f64;
    let mut sq = 0.0;
    for k in 0..data.times.len() {
        let fitted = curve.at(data.times[k] - t0);
        for (obs, fit) in [(data.s[k], fitted.s), (data.i[k], fitted.i), (data.r[k], fitted.r)] {
            let d = (obs - fit).abs();
            max = max.max(d);
            sq += d * d;
        }
    }
    let points = data.times.len();
    let l2 = (sq / (3 * points) as f64).sqrt();
    ModelFitReport {
        max_discrepancy: max,
        l2_discrepancy: l2,
        points,
        flagged: !(max <= FIT_THRESHOLD),
    }
}
