use crate::error::{Error, Result};
use crate::model::{EstimateWithSE, FinalSizeData};

/// Coefficient of variation to assume when the infectious-period law is unknown.
pub const DEFAULT_CV: f64 = 1.0;

struct Prepared {
    r: f64,
    s: f64,
    ns: f64,
    r0: f64,
}

fn prepare(data: &FinalSizeData, cv: f64) -> Result<Prepared> {
    data.validate()?;
    if !(cv.is_finite() && cv >= 0.0) {
        return Err(Error::domain(format!("coefficient of variation must be >= 0, got {cv}")));
    }
    let r = data.corrected_fraction();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!(
            "estimator undefined at corrected fraction {r}; need 0 < r < 1"
        )));
    }
    let s = data.s;
    let r0 = -(-r).ln_1p() / (s * r);
    Ok(Prepared { r, s, ns: data.n as f64 * s, r0 })
}

/// `1 + cv² (1 - r) R0² s²`, shared by both standard errors.
fn numerator(p: &Prepared, cv: f64) -> f64 {
    1.0 + cv * cv * (1.0 - p.r) * p.r0 * p.r0 * p.s * p.s
}

/// `R0` from the fraction infected among initial susceptibles, with the
/// delta-method standard error. The reported fraction is first divided by the
/// reporting fraction when one is given.
pub fn estimate_r0_final_size(data: &FinalSizeData, cv: f64) -> Result<EstimateWithSE> {
    let p = prepare(data, cv)?;
    let se = (numerator(&p, cv) / (p.s * p.s * p.r * (1.0 - p.r))).sqrt() / p.ns.sqrt();
    Ok(EstimateWithSE::with_se(p.r0, se, "final-size"))
}

/// Critical vaccination coverage `1 - 1/R0` from final-size data.
pub fn estimate_vc_final_size(data: &FinalSizeData, cv: f64) -> Result<EstimateWithSE> {
    let p = prepare(data, cv)?;
    let r0_4 = p.r0.powi(4);
    let se = (numerator(&p, cv) / (r0_4 * p.s * p.s * p.r * (1.0 - p.r))).sqrt() / p.ns.sqrt();
    Ok(EstimateWithSE::with_se(1.0 - 1.0 / p.r0, se, "final-size vaccination coverage"))
}
