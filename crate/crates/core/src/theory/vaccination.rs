/// Reproduction number in a population where only the fraction `s` is susceptible.
pub fn effective_r(r0: f64, s: f64) -> f64 {
    r0 * s
}

/// Reproduction number after vaccinating the fraction `v` with a perfect vaccine.
pub fn vaccinated_r(r0: f64, v: f64) -> f64 {
    r0 * (1.0 - v)
}

/// Smallest coverage bringing the reproduction number down to 1; 0 when `r0 <= 1`.
pub fn critical_vaccination(r0: f64) -> f64 {
    if r0 <= 1.0 {
        0.0
    } else {
        1.0 - 1.0 / r0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(critical_vaccination(2.0), 0.5);
        assert_eq!(critical_vaccination(0.7), 0.0);
        assert_eq!(effective_r(3.0, 0.5), 1.5);
        assert_eq!(vaccinated_r(4.0, 0.25), 3.0);
    }

    #[test]
    fn critical_coverage_reaches_threshold() {
        for k in 0..1000 {
            let r0 = 1.0 + 0.013 * (k + 1) as f64;
            let rv = vaccinated_r(r0, critical_vaccination(r0));
            assert!((rv - 1.0).abs() <= 4.0 * f64::EPSILON, "r0 = {r0}, rv = {rv}");
        }
    }
}
