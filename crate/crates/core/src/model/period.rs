use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result, ValidationErrors};
use crate::numeric;

/// Law of the infectious period `I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfectiousPeriodDist {
    /// `I ~ Exp(rate)`; the Markovian model.
    Exponential { rate: f64 },
    /// `I ≡ length`; the continuous-time Reed-Frost model.
    Constant { length: f64 },
    /// `I ~ Gamma(shape, rate)`, mean `shape / rate`.
    Gamma { shape: f64, rate: f64 },
    /// Resampled from observed durations (kept sorted).
    Empirical { sample: Vec<f64> },
}

impl InfectiousPeriodDist {
    pub fn exponential(rate: f64) -> Self {
        Self::Exponential { rate }
    }

    pub fn constant(length: f64) -> Self {
        Self::Constant { length }
    }

    pub fn gamma(shape: f64, rate: f64) -> Self {
        Self::Gamma { shape, rate }
    }

    pub fn empirical(mut sample: Vec<f64>) -> Self {
        sample.sort_by(f64::total_cmp);
        Self::Empirical { sample }
    }

    /// Appends every violated constraint to `errors`.
    pub fn check(&self, errors: &mut ValidationErrors) {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        match self {
            Self::Exponential { rate } => {
                if !positive(*rate) {
                    errors.push("infectious_period", "exponential rate must be > 0");
                }
            }
            Self::Constant { length } => {
                if !positive(*length) {
                    errors.push("infectious_period", "constant length must be > 0");
                }
            }
            Self::Gamma { shape, rate } => {
                if !positive(*shape) {
                    errors.push("infectious_period", "gamma shape must be > 0");
                }
                if !positive(*rate) {
                    errors.push("infectious_period", "gamma rate must be > 0");
                }
            }
            Self::Empirical { sample } => {
                if sample.is_empty() {
                    errors.push("infectious_period", "empirical sample must be non-empty");
                } else if !sample.iter().all(|&x| positive(x)) {
                    errors.push("infectious_period", "empirical durations must be > 0");
                }
            }
        }
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationErrors> {
        let mut errors = ValidationErrors::default();
        self.check(&mut errors);
        errors.into_result()
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Exponential { rate } => 1.0 / rate,
            Self::Constant { length } => *length,
            Self::Gamma { shape, rate } => shape / rate,
            Self::Empirical { sample } => sample.iter().sum::<f64>() / sample.len() as f64,
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            Self::Exponential { rate } => 1.0 / (rate * rate),
            Self::Constant { .. } => 0.0,
            Self::Gamma { shape, rate } => shape / (rate * rate),
            Self::Empirical { sample } => {
                let m = self.mean();
                sample.iter().map(|x| (x - m).powi(2)).sum::<f64>() / sample.len() as f64
            }
        }
    }

    /// Coefficient of variation `sd(I) / E(I)`.
    pub fn cv(&self) -> f64 {
        match self {
            Self::Exponential { .. } => 1.0,
            Self::Constant { .. } => 0.0,
            _ => self.variance().sqrt() / self.mean(),
        }
    }

    /// `P(I > t)`.
    pub fn survival(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 1.0;
        }
        match self {
            Self::Exponential { rate } => (-rate * t).exp(),
            Self::Constant { length } => {
                if t < *length {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Gamma { shape, rate } => {
                if t == 0.0 {
                    1.0
                } else {
                    gamma_ur(*shape, rate * t)
                }
            }
            Self::Empirical { sample } => {
                let at_or_below = sample.partition_point(|&x| x <= t);
                (sample.len() - at_or_below) as f64 / sample.len() as f64
            }
        }
    }

    /// Points where `survival` jumps or has a kink, within `[0, upper]`.
    pub(crate) fn breakpoints(&self, upper: f64) -> Vec<f64> {
        let mut pts = vec![0.0];
        match self {
            Self::Constant { length } if *length < upper => pts.push(*length),
            Self::Empirical { sample } => {
                let mut last = 0.0;
                for &x in sample.iter().filter(|&&x| x < upper) {
                    if x > last {
                        pts.push(x);
                        last = x;
                    }
                }
            }
            _ => {}
        }
        pts.push(upper);
        pts
    }

    /// Time `T` beyond which at most `eps` of the generation-time mass
    /// `P(I > t) / E(I)` remains, i.e. `E[(I - T)+] <= eps E(I)`. Exact support
    /// end for bounded laws.
    pub fn generation_cutoff(&self, eps: f64) -> f64 {
        match self {
            Self::Exponential { rate } => -eps.ln() / rate,
            Self::Constant { length } => *length,
            Self::Empirical { sample } => *sample.last().expect("validated non-empty"),
            Self::Gamma { shape, rate } => {
                let (k, lam) = (*shape, *rate);
                let mean = k / lam;
                // E[(I-T)+] = mean Q(k+1, lam T) - T Q(k, lam T), decreasing in T.
                let tail = |t: f64| {
                    let x = lam * t;
                    (mean * gamma_ur(k + 1.0, x) - t * gamma_ur(k, x)).max(0.0) / mean
                };
                let mut hi = mean.max(1e-12);
                while tail(hi) > eps {
                    hi *= 2.0;
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if tail(mid) > eps {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= 1e-9 * hi {
                        break;
                    }
                }
                hi
            }
        }
    }

    /// Smallest `rho` for which `∫ e^{-rho t} P(I > t) dt` diverges, if any.
    pub(crate) fn abscissa_of_divergence(&self) -> Option<f64> {
        match self {
            Self::Exponential { rate } | Self::Gamma { rate, .. } => Some(-rate),
            Self::Constant { .. } | Self::Empirical { .. } => None,
        }
    }

    /// `∫₀^∞ e^{-rho t} P(I > t) dt`, the transform behind both the Malthusian
    /// equation and the mean number of contacts of an infective that may also
    /// die at rate `rho`.
    ///
    /// Closed forms for the exponential, constant and empirical laws; adaptive
    /// quadrature of the survival function for the gamma law.
    pub fn survival_transform(&self, rho: f64) -> Result<f64> {
        if let Some(bound) = self.abscissa_of_divergence() {
            if rho <= bound {
                return Err(Error::Divergent(format!(
                    "survival transform diverges for rho = {rho} <= {bound}"
                )));
            }
        }
        // (1 - e^{-rho x}) / rho, continuous through rho = 0.
        let finite_window = |x: f64| {
            if rho == 0.0 {
                x
            } else {
                -(-rho * x).exp_m1() / rho
            }
        };
        match self {
            Self::Exponential { rate } => Ok(1.0 / (rate + rho)),
            Self::Constant { length } => Ok(finite_window(*length)),
            Self::Empirical { sample } => {
                Ok(sample.iter().map(|&x| finite_window(x)).sum::<f64>() / sample.len() as f64)
            }
            Self::Gamma { .. } => {
                let upper = self.weighted_cutoff(rho, 1e-15);
                numeric::integrate(|t| (-rho * t).exp() * self.survival(t), 0.0, upper, 1e-13)
            }
        }
    }

    /// Upper integration limit for `e^{-rho t} P(I > t)` on unbounded laws.
    pub(crate) fn weighted_cutoff(&self, rho: f64, eps: f64) -> f64 {
        let base = self.generation_cutoff(eps);
        if rho >= 0.0 {
            return base;
        }
        let mean = self.mean();
        let mut t = base.max(mean);
        while (-rho * t).exp() * self.survival(t) * t > eps * mean {
            t *= 1.5;
        }
        t
    }

    /// `E(z^X)` for `X ~ MixPoi(beta I)`, the offspring count of one infective
    /// in an infinite susceptible population.
    pub fn mixed_poisson_pgf(&self, beta: f64, z: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::domain(format!("pgf argument z = {z} outside [0, 1]")));
        }
        let a = beta * (1.0 - z);
        Ok(match self {
            // Geometric on {0, 1, ...} with success probability rate / (beta + rate).
            Self::Exponential { rate } => rate / (rate + a),
            Self::Constant { length } => (-a * length).exp(),
            Self::Empirical { sample } => {
                sample.iter().map(|&x| (-a * x).exp()).sum::<f64>() / sample.len() as f64
            }
            // E[e^{-aI}] = 1 - a ∫ e^{-at} P(I > t) dt.
            Self::Gamma { .. } => {
                if a == 0.0 {
                    1.0
                } else {
                    1.0 - a * self.survival_transform(a)?
                }
            }
        })
    }

    /// Prepared sampler for repeated draws.
    pub fn sampler(&self) -> PeriodSampler<'_> {
        match self {
            Self::Exponential { rate } => PeriodSampler::Exponential(*rate),
            Self::Constant { length } => PeriodSampler::Constant(*length),
            Self::Gamma { shape, rate } => PeriodSampler::Gamma(
                Gamma::new(*shape, 1.0 / rate).expect("validated gamma parameters"),
            ),
            Self::Empirical { sample } => PeriodSampler::Empirical(sample),
        }
    }
}

/// Draws infectious periods; see [`InfectiousPeriodDist::sampler`].
#[derive(Debug, Clone)]
pub enum PeriodSampler<'a> {
    Exponential(f64),
    Constant(f64),
    Gamma(Gamma<f64>),
    Empirical(&'a [f64]),
}

impl Distribution<f64> for PeriodSampler<'_> {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Exponential(rate) => {
                let e: f64 = rng.sample(Exp1);
                e / rate
            }
            Self::Constant(length) => *length,
            Self::Gamma(g) => g.sample(rng),
            Self::Empirical(sample) => sample[rng.random_range(0..sample.len())],
        }
    }
}
