use crate::numeric;

/// `1 - r - e^{-r0 s r}`, written with `expm1` to stay accurate near `r = 0`.
pub fn final_size_residual(r0: f64, s: f64, r: f64) -> f64 {
    -r - (-r0 * s * r).exp_m1()
}

/// Fraction of the initially susceptible infected by a major outbreak: the
/// positive root of `1 - r = exp(-r0 s r)`, or 0 when `r0 s <= 1`.
///
/// With `s = 1` this is the plain final-size equation.
pub fn solve_final_size(r0: f64, s: f64) -> f64 {
    let re = r0 * s;
    if re.is_nan() {
        return f64::NAN;
    }
    if re <= 1.0 {
        return 0.0;
    }
    let f = |r: f64| final_size_residual(r0, s, r);
    // f is concave with f(0) = 0, f(1) < 0 and f(1 - 1/re) >= 0, so the
    // positive root lies in [1 - 1/re, 1).
    let mut lo = 1.0 - 1.0 / re;
    while lo > 0.0 && f(lo) <= 0.0 {
        lo *= 0.5;
    }
    if lo <= 0.0 {
        return 0.0;
    }
    let mut r = numeric::brent(f, lo, 1.0, 1e-16).unwrap_or(lo);
    // Newton polish; f'(r) = re e^{-re r} - 1 is bounded away from zero here.
    for _ in 0..4 {
        let fr = f(r);
        if fr.abs() < 1e-15 {
            break;
        }
        let d = re * (-re * r).exp() - 1.0;
        let next = r - fr / d;
        if !(next > 0.0 && next < 1.0) || f(next).abs() >= fr.abs() {
            break;
        }
        r = next;
    }
    r
}
