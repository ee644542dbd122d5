//! Stochastic SIR-family epidemic models.
//!
//! The crate is split along the lines of the workflow it supports:
//!
//! * [`model`] holds the shared domain types (parameters, infectious-period laws,
//!   trajectories, estimates) and the seeded random-source contract.
//! * [`simulator`] contains exact stochastic engines: event-driven SIR with an
//!   arbitrary infectious period, the Markovian Gillespie SIR, the discrete
//!   Reed-Frost chain binomial and the endemic SIR with demography.
//! * [`theory`] solves the deterministic and asymptotic equations: ODEs, final
//!   size, extinction probability, Malthusian rate, Lotka inversion, endemic
//!   equilibrium, vaccination thresholds and multitype R0.
//! * [`oracle`] enumerates Reed-Frost chains exactly for small populations.
//! * [`inference`] implements the R0, growth-rate and vaccination-coverage
//!   estimators together with their standard errors.
//! * [`cli`] drives all of the above from the command line.
// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod inference;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod simulator;
pub mod theory;

pub use error::{Error, Result, ValidationError, ValidationErrors};
pub use model::{
    EpidemicParams, EstimateWithSE, FinalSizeData, GenerationTimeDist, InfectiousPeriodDist,
    SeedTree, Trajectory,
};
