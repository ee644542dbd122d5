use crate::error::{Error, Result};
use crate::model::EstimateWithSE;

fn check(age: f64, lifespan: f64) -> Result<()> {
    if !(age > 0.0 && age.is_finite()) {
        return Err(Error::domain(format!("average age at infection must be > 0, got {age}")));
    }
    if !(age < lifespan && lifespan.is_finite()) {
        return Err(Error::domain(format!(
            "average age at infection {age} must be below the average lifespan {lifespan}"
        )));
    }
    Ok(())
}

/// `R0 = lifespan / age`, since the endemic susceptible fraction is about
/// `age / lifespan`. No standard error is available.
pub fn estimate_r0_endemic(age: f64, lifespan: f64) -> Result<EstimateWithSE> {
    check(age, lifespan)?;
    Ok(EstimateWithSE::point(lifespan / age, "endemic level (standard error unavailable)"))
}

/// Critical coverage `1 - age / lifespan` from endemic data.
pub fn estimate_vc_endemic(age: f64, lifespan: f64) -> Result<EstimateWithSE> {
    check(age, lifespan)?;
    Ok(EstimateWithSE::point(
        1.0 - age / lifespan,
        "endemic level vaccination coverage (standard error unavailable)",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(estimate_r0_endemic(5.0, 75.0).unwrap().estimate, 15.0);
        assert_eq!(estimate_vc_endemic(5.0, 75.0).unwrap().estimate, 14.0 / 15.0);
        assert_eq!(estimate_r0_endemic(30.0, 60.0).unwrap().estimate, 2.0);
        assert_eq!(estimate_vc_endemic(30.0, 60.0).unwrap().estimate, 0.5);
        assert!(estimate_r0_endemic(5.0, 75.0).unwrap().se.is_none());
    }

    #[test]
    fn domain_errors() {
        assert!(estimate_r0_endemic(75.0, 75.0).is_err());
        assert!(estimate_r0_endemic(0.0, 75.0).is_err());
        assert!(estimate_vc_endemic(80.0, 75.0).is_err());
    }

    #[test]
    fn coverage_consistent_with_r0() {
        for (a, l) in [(5.0, 75.0), (2.5, 70.0), (11.0, 80.0), (1.0, 3.0)] {
            let r0 = estimate_r0_endemic(a, l).unwrap().estimate;
            let vc = estimate_vc_endemic(a, l).unwrap().estimate;
            assert!((1.0 - 1.0 / r0 - vc).abs() < 1e-12);
        }
    }
}
