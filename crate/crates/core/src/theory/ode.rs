use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One saved point of a deterministic solution, in population fractions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t: f64,
    pub s: f64,
    pub i: f64,
    pub r: f64,
}

impl CurvePoint {
    pub fn total(&self) -> f64 {
        self.s + self.i + self.r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterministicCurve {
    pub points: Vec<CurvePoint>,
}

impl DeterministicCurve {
    pub fn last(&self) -> CurvePoint {
        *self.points.last().expect("curve always holds its initial point")
    }

    /// Linear interpolation; clamps outside the grid.
    pub fn at(&self, t: f64) -> CurvePoint {
        let pts = &self.points;
        let k = pts.partition_point(|p| p.t <= t);
        if k == 0 {
            return pts[0];
        }
        if k == pts.len() {
            return pts[k - 1];
        }
        let (a, b) = (pts[k - 1], pts[k]);
        let w = (t - a.t) / (b.t - a.t);
        let lerp = |x: f64, y: f64| x + w * (y - x);
        CurvePoint { t, s: lerp(a.s, b.s), i: lerp(a.i, b.i), r: lerp(a.r, b.r) }
    }
}

/// Time grid for the fixed-step solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeGrid {
    pub horizon: f64,
    pub step: f64,
    /// Save every `save_every`-th step (the final point is always saved).
    pub save_every: usize,
}

impl OdeGrid {
    pub fn new(horizon: f64) -> Self {
        Self { horizon, step: 1e-3, save_every: 1 }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn with_save_every(mut self, save_every: usize) -> Self {
        self.save_every = save_every;
        self
    }
}

fn check(init: [f64; 3], grid: &OdeGrid) -> Result<()> {
    if !(grid.step > 0.0 && grid.step.is_finite()) {
        return Err(Error::domain(format!("step must be > 0, got {}", grid.step)));
    }
    if !(grid.horizon >= 0.0 && grid.horizon.is_finite()) {
        return Err(Error::domain(format!("horizon must be >= 0, got {}", grid.horizon)));
    }
    if grid.save_every == 0 {
        return Err(Error::domain("save_every must be >= 1"));
    }
    if init.iter().any(|x| !(*x >= 0.0)) {
        return Err(Error::domain("initial fractions must be >= 0"));
    }
    let sum: f64 = init.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!("initial fractions must sum to 1, got {sum}")));
    }
    Ok(())
}

fn rk4<F>(field: F, init: [f64; 3], grid: &OdeGrid) -> DeterministicCurve
where
    F: Fn([f64; 3]) -> [f64; 3],
{
    let steps = (grid.horizon / grid.step - 1e-9).ceil().max(0.0) as usize;
    let mut y = init;
    let point = |t: f64, y: [f64; 3]| CurvePoint { t, s: y[0], i: y[1], r: y[2] };
    let mut points = vec![point(0.0, y)];
    let axpy = |y: [f64; 3], h: f64, k: [f64; 3]| {
        [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]]
    };
    for n in 1..=steps {
        let t0 = (n - 1) as f64 * grid.step;
        let t1 = (n as f64 * grid.step).min(grid.horizon);
        let h = t1 - t0;
        let k1 = field(y);
        let k2 = field(axpy(y, 0.5 * h, k1));
        let k3 = field(axpy(y, 0.5 * h, k2));
        let k4 = field(axpy(y, h, k3));
        for c in 0..3 {
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        if n % grid.save_every == 0 || n == steps {
            points.push(point(t1, y));
        }
    }
    DeterministicCurve { points }
}

/// Closed SIR system `s' = -β s i`, `i' = β s i - γ i`, `r' = γ i`.
pub fn integrate_sir(beta: f64, gamma: f64, init: [f64; 3], grid: OdeGrid) -> Result<DeterministicCurve> {
    integrate_endemic(beta, gamma, 0.0, init, grid)
}

/// SIR with births and deaths at rate μ, constant population.
pub fn integrate_endemic(
    beta: f64,
    gamma: f64,
    mu: f64,
    init: [f64; 3],
    grid: OdeGrid,
) -> Result<DeterministicCurve> {
    check(init, &grid)?;
    if !(beta >= 0.0 && gamma >= 0.0 && mu >= 0.0) {
        return Err(Error::domain("rates must be >= 0"));
    }
    let field = |y: [f64; 3]| {
        let inf = beta * y[0] * y[1];
        [
            mu - inf - mu * y[0],
            inf - gamma * y[1] - mu * y[1],
            gamma * y[1] - mu * y[2],
        ]
    };
    Ok(rk4(field, init, &grid))
}
