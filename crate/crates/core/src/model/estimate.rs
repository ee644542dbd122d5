use serde::{Deserialize, Serialize};

const Z95: f64 = 1.96;

/// Point estimate with optional standard error and a provenance tag naming
/// the estimator that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithSE {
    pub estimate: f64,
    pub se: Option<f64>,
    /// `estimate ± 1.96 se`; absent when `se` is.
    pub ci95: Option<(f64, f64)>,
    pub method: String,
}

impl EstimateWithSE {
    pub fn with_se(estimate: f64, se: f64, method: impl Into<String>) -> Self {
        Self {
            estimate,
            se: Some(se),
            ci95: Some((estimate - Z95 * se, estimate + Z95 * se)),
            method: method.into(),
        }
    }

    pub fn point(estimate: f64, method: impl Into<String>) -> Self {
        Self {
            estimate,
            se: None,
            ci95: None,
            method: method.into(),
        }
    }

    pub fn covers(&self, truth: f64) -> bool {
        self.ci95.is_some_and(|(lo, hi)| lo <= truth && truth <= hi)
    }
}
