//! Estimators for final-size, temporal, emerging-phase and endemic data.

mod data;
mod emerging;
mod endemic;
mod final_size;
mod fit;
mod temporal;

pub use data::{IncidenceSeries, TemporalData, TimeWindow};
pub use emerging::{estimate_growth_rate, estimate_r0_emerging};
pub use endemic::{estimate_r0_endemic, estimate_vc_endemic};
pub use final_size::{estimate_r0_final_size, estimate_vc_final_size, DEFAULT_CV};
pub use fit::{model_fit_report, ModelFitReport, FIT_THRESHOLD};
pub use temporal::{estimate_beta, estimate_infectious_period, estimate_r0_temporal};
