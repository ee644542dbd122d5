use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean numbers of type-`j` infections caused by one type-`i` infective,
/// stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NextGenMatrix {
    k: usize,
    entries: Vec<f64>,
}

impl NextGenMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::domain("next-generation matrix must have at least one type"));
        }
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::domain("next-generation matrix must be square"));
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        if entries.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::domain("next-generation matrix entries must be finite and >= 0"));
        }
        Ok(Self { k, entries })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.k + j]
    }

    fn apply_shifted(&self, shift: f64, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * self.k..(i + 1) * self.k];
            *o = shift * x[i] + row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        }
    }
}

const MAX_ITERATIONS: usize = 1_000_000;

/// Spectral radius of the next-generation matrix.
///
/// Power iteration on `M + cI` with `c > 0`, which makes the Perron root
/// strictly dominant even for periodic matrices.
pub fn multitype_r0(m: &NextGenMatrix) -> Result<f64> {
    let k = m.k;
    let norm = (0..k)
        .map(|i| (0..k).map(|j| m.get(i, j)).sum::<f64>())
        .fold(0.0, f64::max);
    if norm == 0.0 {
        return Ok(0.0);
    }
    let shift = 0.5 * norm;
    let mut x = vec![1.0 / k as f64; k];
    let mut y = vec![0.0; k];
    let mut previous = f64::NAN;
    for _ in 0..MAX_ITERATIONS {
        m.apply_shifted(shift, &x, &mut y);
        // x is a probability vector, so the 1-norm of y is the Rayleigh-type estimate.
        let lambda: f64 = y.iter().sum();
        // Collatz-Wielandt bounds bracket the Perron root when x > 0.
        if x.iter().all(|&v| v > 0.0) {
            let ratios = y.iter().zip(&x).map(|(a, b)| a / b);
            let (lo, hi) = ratios.fold((f64::INFINITY, 0.0_f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
            if hi - lo <= 1e-13 * hi {
                return Ok(0.5 * (lo + hi) - shift);
            }
        }
        if (lambda - previous).abs() <= 1e-15 * lambda {
            return Ok(lambda - shift);
        }
        previous = lambda;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / lambda;
        }
    }
    Err(Error::NoConvergence { what: "spectral radius".into(), iterations: MAX_ITERATIONS })
}
