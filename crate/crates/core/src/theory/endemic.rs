use crate::error::{Error, Result};

/// Endemic equilibrium `(s, i, r)` of the SIR model with births and deaths at
/// rate `mu`. Requires `R0 = beta / (gamma + mu) > 1`.
pub fn endemic_level(beta: f64, gamma: f64, mu: f64) -> Result<(f64, f64, f64)> {
    if !(beta >= 0.0 && gamma >= 0.0 && mu >= 0.0 && gamma + mu > 0.0) {
        return Err(Error::domain("rates must be >= 0 with gamma + mu > 0"));
    }
    let r0 = beta / (gamma + mu);
    if !(r0 > 1.0) {
        return Err(Error::NotSupercritical { r0 });
    }
    // Mean infectious period relative to mean infectious period plus lifetime.
    let eps = mu / (gamma + mu);
    let s = 1.0 / r0;
    let i = eps * (r0 - 1.0) / r0;
    let r = (1.0 - eps) * (r0 - 1.0) / r0;
    Ok((s, i, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point() {
        let mu = 1.0 / 75.0;
        let (s, i, r) = endemic_level(2.0, 1.0, mu).unwrap();
        assert!((s - 0.506_666_666_666_666_7).abs() < 1e-15);
        assert!((i - 0.006_491_228_070_175_439).abs() < 1e-15);
        assert!((r - 0.486_842_105_263_157_9).abs() < 1e-15);
        assert!((s + i + r - 1.0).abs() < 1e-15);
        let ds = mu - 2.0 * s * i - mu * s;
        let di = 2.0 * s * i - i - mu * i;
        let dr = i - mu * r;
        assert!(ds.abs() < 1e-12 && di.abs() < 1e-12 && dr.abs() < 1e-12);
    }

    #[test]
    fn vanishing_demography() {
        let (s, i, _) = endemic_level(3.0, 1.0, 1e-12).unwrap();
        assert!(i < 1e-11);
        assert!((s - 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn subcritical_rejected() {
        assert!(matches!(endemic_level(1.0, 1.0, 0.1), Err(Error::NotSupercritical { .. })));
    }
}
