use serde::{Deserialize, Serialize};

use super::InfectiousPeriodDist;
use crate::error::{Error, Result, ValidationErrors};

/// Parameters of the SIR family: closed population when `death_rate == 0`,
/// Markovian demography otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpidemicParams {
    pub n: u64,
    /// Rate of infectious contacts per infective.
    pub beta: f64,
    pub infectious_period: InfectiousPeriodDist,
    pub initial_infectives: u64,
    /// Fraction `1 - s` initially immune (or vaccinated).
    pub immune_fraction: f64,
    /// Per-capita death rate `mu`; births replace deaths at rate `mu n`.
    pub death_rate: f64,
    pub seed: u64,
}

impl EpidemicParams {
    /// One index case, no immunity, closed population, seed 0.
    pub fn new(n: u64, beta: f64, infectious_period: InfectiousPeriodDist) -> Self {
        Self {
            n,
            beta,
            infectious_period,
            initial_infectives: 1,
            immune_fraction: 0.0,
            death_rate: 0.0,
            seed: 0,
        }
    }

    /// The Markovian model with `I ~ Exp(gamma)`.
    pub fn markov(n: u64, beta: f64, gamma: f64) -> Self {
        Self::new(n, beta, InfectiousPeriodDist::exponential(gamma))
    }

    pub fn with_initial_infectives(mut self, i0: u64) -> Self {
        self.initial_infectives = i0;
        self
    }

    pub fn with_immune_fraction(mut self, f: f64) -> Self {
        self.immune_fraction = f;
        self
    }

    pub fn with_death_rate(mut self, mu: f64) -> Self {
        self.death_rate = mu;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Basic reproduction number. `beta E(I)` in a closed population; with
    /// deaths, `beta E(min(I, lifetime))`, which is `beta / (gamma + mu)` for
    /// the Markovian model.
    pub fn r0(&self) -> f64 {
        let mu = self.death_rate;
        match self.infectious_period {
            InfectiousPeriodDist::Exponential { rate } => self.beta / (rate + mu),
            _ if mu == 0.0 => self.beta * self.infectious_period.mean(),
            _ => self
                .infectious_period
                .survival_transform(mu)
                .map_or(f64::NAN, |m| self.beta * m),
        }
    }

    /// Recovery rate when the infectious period is exponential.
    pub fn gamma(&self) -> Option<f64> {
        match self.infectious_period {
            InfectiousPeriodDist::Exponential { rate } => Some(rate),
            _ => None,
        }
    }

    /// Individuals immune at time zero.
    pub fn initially_immune(&self) -> u64 {
        let immune = (self.immune_fraction * self.n as f64).round() as u64;
        immune.min(self.n.saturating_sub(self.initial_infectives))
    }

    /// Individuals susceptible at time zero.
    pub fn initially_susceptible(&self) -> u64 {
        self.n
            .saturating_sub(self.initial_infectives)
            .saturating_sub(self.initially_immune())
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationErrors> {
        validate(self)
    }
}

/// Checks every parameter invariant and reports all violations at once.
pub fn validate(p: &EpidemicParams) -> std::result::Result<(), ValidationErrors> {
    let mut errors = ValidationErrors::default();
    if p.n == 0 {
        errors.push("n", "population size must be >= 1");
    }
    if p.initial_infectives == 0 {
        errors.push("initial_infectives", "need at least one initial infective");
    }
    if p.initial_infectives > p.n {
        errors.push("initial_infectives", "initial infectives exceed population size n");
    }
    if !(p.beta.is_finite() && p.beta > 0.0) {
        errors.push("beta", "beta must be > 0");
    }
    p.infectious_period.check(&mut errors);
    if !(p.immune_fraction.is_finite() && p.immune_fraction >= 0.0) {
        errors.push("immune_fraction", "immune fraction must be in [0, 1)");
    } else if p.immune_fraction >= 1.0 {
        errors.push("immune_fraction", "no susceptibles: immune fraction must be < 1");
    } else if p.n > 0 && p.immune_fraction + p.initial_infectives as f64 / p.n as f64 > 1.0 {
        errors.push(
            "immune_fraction",
            "no susceptibles: immune fraction plus initial infectives exceed n",
        );
    }
    if !(p.death_rate.is_finite() && p.death_rate >= 0.0) {
        errors.push("death_rate", "death rate must be >= 0");
    }
    errors.into_result()
}

/// Offspring pgf `E(z^X)`, `X ~ MixPoi(beta I)`, of the early branching
/// approximation. Closed population only.
pub fn offspring_pgf(params: &EpidemicParams, z: f64) -> Result<f64> {
    if params.death_rate != 0.0 {
        return Err(Error::Unsupported(
            "offspring pgf is defined for the closed population (death_rate = 0)".into(),
        ));
    }
    params.infectious_period.mixed_poisson_pgf(params.beta, z)
}

/// Observed final outcome of one outbreak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FinalSizeData {
    pub n: u64,
    /// Fraction initially susceptible.
    pub s: f64,
    /// Observed fraction infected among the initially susceptible.
    pub r_tilde_s: f64,
    /// Estimated fraction of cases reported, if under-reporting is corrected.
    pub reporting_fraction: Option<f64>,
}

impl FinalSizeData {
    pub fn new(n: u64, s: f64, r_tilde_s: f64) -> Self {
        Self {
            n,
            s,
            r_tilde_s,
            reporting_fraction: None,
        }
    }

    pub fn with_reporting_fraction(mut self, pi_hat: f64) -> Self {
        self.reporting_fraction = Some(pi_hat);
        self
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationErrors> {
        let mut errors = ValidationErrors::default();
        if self.n == 0 {
            errors.push("n", "population size must be >= 1");
        }
        if !(self.s > 0.0 && self.s <= 1.0) {
            errors.push("s", "susceptible fraction must be in (0, 1]");
        }
        if !(0.0..=1.0).contains(&self.r_tilde_s) {
            errors.push("r_tilde_s", "observed fraction must be in [0, 1]");
        }
        if let Some(pi) = self.reporting_fraction {
            if !(pi > 0.0 && pi <= 1.0) {
                errors.push("reporting_fraction", "reporting fraction must be in (0, 1]");
            } else if self.r_tilde_s / pi > 1.0 {
                errors.push(
                    "reporting_fraction",
                    "corrected fraction r_tilde_s / reporting_fraction exceeds 1",
                );
            }
        }
        errors.into_result()
    }

    /// Infected fraction among initial susceptibles after dividing out the
    /// reporting fraction.
    pub fn corrected_fraction(&self) -> f64 {
        match self.reporting_fraction {
            Some(pi) => self.r_tilde_s / pi,
            None => self.r_tilde_s,
        }
    }
}
