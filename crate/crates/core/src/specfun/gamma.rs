//! Gamma, log-gamma and digamma on the real line.
//!
//! The gamma evaluation is the Lanczos approximation from Pugh's analysis
//! (the same table statrs uses); digamma shifts into the asymptotic region
//! and applies the Bernoulli series.

use std::f64::consts::{E, PI};

/// Lanczos partial fraction coefficients.
const GAMMA_DK: &[f64] = &[
    2.4857408913875355e-5,
    1.0514237858172197,
    -3.4568709722201625,
    4.512277094668948,
    -2.9828522532357664,
    1.056397115771267,
    -1.9542877319164587e-1,
    1.709705434044412e-2,
    -5.719261174043057e-4,
    4.633994733599057e-6,
    -2.7199490848860772e-9,
];

const GAMMA_R: f64 = 10.900511;
const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657;
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452;
const LN_PI: f64 = 1.1447298858494002;

fn lanczos_series(x: f64) -> f64 {
    if x < 0.5 {
        GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, d)| s + d / (i as f64 - x))
    } else {
        GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, d)| s + d / (x + i as f64 - 1.0))
    }
}

/// Gamma(x) for real x; poles at non-positive integers return infinity.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        PI / ((PI * x).sin()
            * lanczos_series(x)
            * TWO_SQRT_E_OVER_PI
            * ((0.5 - x + GAMMA_R) / E).powf(0.5 - x))
    } else {
        lanczos_series(x) * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / E).powf(x - 0.5)
    }
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        LN_PI
            - (PI * x).sin().ln()
            - lanczos_series(x).ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + GAMMA_R) / E).ln()
    } else {
        lanczos_series(x).ln()
            + LN_2_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + GAMMA_R) / E).ln()
    }
}

/// (ln|Gamma(x)|, sign of Gamma(x)) for any real x away from the poles.
/// Sign 0 marks a pole (non-positive integer x).
pub fn ln_gamma_signed(x: f64) -> (f64, i8) {
    if x > 0.0 {
        return (ln_gamma(x), 1);
    }
    if x == x.floor() {
        return (f64::INFINITY, 0);
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    let s = (PI * x).sin();
    let ln_abs = LN_PI - s.abs().ln() - ln_gamma(1.0 - x);
    (ln_abs, if s > 0.0 { 1 } else { -1 })
}

/// Pochhammer product Gamma(t+k)/Gamma(t) = t (t+1) ... (t+k-1).
pub fn pochhammer(t: f64, k: i64) -> f64 {
    debug_assert!(k >= 0);
    (0..k).map(|j| t + j as f64).product()
}

/// Bernoulli-series coefficients B_{2k}/(2k) for the digamma asymptotic.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma psi(x) for x > 0. Satisfies psi(x+1) = psi(x) + 1/x.
pub fn digamma(x: f64) -> crate::error::Result<f64> {
    if !(x > 0.0) {
        return Err(crate::error::Error::Domain(format!("digamma: x = {x} <= 0")));
    }
    Ok(digamma_unchecked(x))
}

fn digamma_unchecked(x: f64) -> f64 {
    let mut result = 0.0;
    let mut z = x;
    while z < 12.0 {
        result -= 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    result += z.ln() - 0.5 * inv;
    let inv2 = inv * inv;
    let mut p = inv2;
    for c in DIGAMMA_ASYMP {
        result -= c * p;
        p *= inv2;
    }
    result
}

/// Digamma extended to negative non-integer arguments by the reflection
/// psi(1-u) = psi(u) + pi cot(pi u). Poles at integers <= 0.
pub fn digamma_any(x: f64) -> crate::error::Result<f64> {
    if x > 0.0 {
        return Ok(digamma_unchecked(x));
    }
    if x == x.floor() {
        return Err(crate::error::Error::Pole {
            what: "digamma".into(),
            at: x,
        });
    }
    // psi(x) = psi(1-x) - pi cot(pi x)
    let c = (PI * x).tan();
    Ok(digamma_unchecked(1.0 - x) - PI / c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;

    #[test]
    fn gamma_basics() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(gamma(-2.0).is_infinite());
    }

    #[test]
    fn ln_gamma_signed_reflection() {
        let (l, s) = ln_gamma_signed(-0.5);
        assert_eq!(s, -1);
        assert!((l.exp() - 2.0 * PI.sqrt()).abs() < 1e-12);
        let (l2, s2) = ln_gamma_signed(-1.5);
        assert_eq!(s2, 1);
        assert!((l2.exp() - 4.0 * PI.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(ln_gamma_signed(-3.0).1, 0);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        let half = digamma(0.5).unwrap();
        assert!((half - (-EULER_GAMMA - 2.0 * 2.0_f64.ln())).abs() < 1e-13);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn digamma_any_negative() {
        // psi(-0.5) = psi(1.5) (cot(-pi/2) = 0)
        let v = digamma_any(-0.5).unwrap();
        assert!((v - digamma(1.5).unwrap()).abs() < 1e-12);
        assert!(digamma_any(-3.0).is_err());
    }

    #[test]
    fn pochhammer_products() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(2.5, 3), 2.5 * 3.5 * 4.5);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
    }
}
