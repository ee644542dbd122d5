use serde::{Deserialize, Serialize};

use super::InfectiousPeriodDist;
use crate::error::{Error, Result};
use crate::numeric;

/// Truncation level for unbounded generation-time laws.
const TAIL_MASS: f64 = 1e-10;
const QUAD_TOL: f64 = 1e-12;

/// Generation-time density `g(t)`: the rate profile, normalised to one, at
/// which an infective infects others `t` time units after its own infection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenerationTimeDist {
    /// `g(t) = P(I > t) / E(I)` of the standard SIR model.
    FromInfectiousPeriod { period: InfectiousPeriodDist },
    /// Tabulated density, linearly interpolated and zero outside the grid.
    EmpiricalDensity { points: Vec<(f64, f64)> },
}

impl GenerationTimeDist {
    pub fn from_period(period: InfectiousPeriodDist) -> Self {
        Self::FromInfectiousPeriod { period }
    }

    /// Tabulated density; the grid must start at `t >= 0`, be strictly
    /// increasing, non-negative and integrate to one within `1e-8`.
    pub fn empirical_density(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain("density grid needs at least two points"));
        }
        if points[0].0 < 0.0 || points.iter().any(|&(t, g)| !t.is_finite() || !(g >= 0.0)) {
            return Err(Error::domain("density grid needs t >= 0 and g(t) >= 0"));
        }
        if !points.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::domain("density grid times must be strictly increasing"));
        }
        let mass = points
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum::<f64>();
        if (mass - 1.0).abs() > 1e-8 {
            return Err(Error::domain(format!(
                "density integrates to {mass}, expected 1"
            )));
        }
        Ok(Self::EmpiricalDensity { points })
    }

    pub fn density(&self, t: f64) -> f64 {
        match self {
            Self::FromInfectiousPeriod { period } => {
                if t < 0.0 {
                    0.0
                } else {
                    period.survival(t) / period.mean()
                }
            }
            Self::EmpiricalDensity { points } => interpolate(points, t),
        }
    }

    /// Laplace transform `L(rho) = ∫₀^∞ e^{-rho t} g(t) dt`, by adaptive
    /// quadrature truncated where at most `1e-10` of the mass remains (or at
    /// the end of a bounded support).
    pub fn laplace(&self, rho: f64) -> Result<f64> {
        if !rho.is_finite() {
            return Err(Error::domain(format!("transform argument rho = {rho}")));
        }
        let value = match self {
            Self::FromInfectiousPeriod { period } => {
                if let Some(bound) = period.abscissa_of_divergence() {
                    if rho <= bound {
                        return Err(Error::Divergent(format!(
                            "generation-time transform diverges for rho = {rho} <= {bound}"
                        )));
                    }
                }
                let upper = period.weighted_cutoff(rho, TAIL_MASS);
                let mean = period.mean();
                let pieces = period.breakpoints(upper);
                let mut total = 0.0;
                for w in pieces.windows(2) {
                    // Integrate just inside each piece so step laws see a
                    // constant survival value.
                    total += numeric::integrate(
                        |t| (-rho * t).exp() * period.survival(t),
                        w[0],
                        w[1],
                        QUAD_TOL,
                    )?;
                }
                total / mean
            }
            Self::EmpiricalDensity { points } => {
                let mut total = 0.0;
                for w in points.windows(2) {
                    let ((t0, g0), (t1, g1)) = (w[0], w[1]);
                    total += numeric::integrate(
                        |t| (-rho * t).exp() * (g0 + (g1 - g0) * (t - t0) / (t1 - t0)),
                        t0,
                        t1,
                        QUAD_TOL,
                    )?;
                }
                total
            }
        };
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Divergent(format!(
                "generation-time transform at rho = {rho} is {value}"
            )));
        }
        Ok(value)
    }

    /// Mean generation time `∫ t g(t) dt`.
    pub fn mean(&self) -> Result<f64> {
        match self {
            Self::FromInfectiousPeriod { period } => {
                let upper = period.generation_cutoff(TAIL_MASS);
                let mut total = 0.0;
                for w in period.breakpoints(upper).windows(2) {
                    total += numeric::integrate(|t| t * period.survival(t), w[0], w[1], QUAD_TOL)?;
                }
                Ok(total / period.mean())
            }
            Self::EmpiricalDensity { points } => {
                let mut total = 0.0;
                for w in points.windows(2) {
                    let ((t0, g0), (t1, g1)) = (w[0], w[1]);
                    total += numeric::integrate(
                        |t| t * (g0 + (g1 - g0) * (t - t0) / (t1 - t0)),
                        t0,
                        t1,
                        QUAD_TOL,
                    )?;
                }
                Ok(total)
            }
        }
    }
}

fn interpolate(points: &[(f64, f64)], t: f64) -> f64 {
    let (first, last) = (points[0], points[points.len() - 1]);
    if t < first.0 || t > last.0 {
        return 0.0;
    }
    let k = points.partition_point(|&(x, _)| x <= t);
    if k == points.len() {
        return last.1;
    }
    let ((t0, g0), (t1, g1)) = (points[k - 1], points[k]);
    g0 + (g1 - g0) * (t - t0) / (t1 - t0)
}
