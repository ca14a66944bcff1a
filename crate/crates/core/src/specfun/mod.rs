//! Real-argument special functions used by every other module: Riemann and
//! Hurwitz zeta with Euler-Maclaurin continuation, digamma/polygamma,
//! polylogarithms of the exponential argument, and small combinatorial
//! helpers with the extended binomial conventions.

mod gamma;
mod polylog;
mod zeta;

pub use gamma::{digamma, digamma_any, gamma, ln_gamma, ln_gamma_signed, pochhammer};
pub use polylog::{dilog, polylog_exp, LiSeries, Y_SWITCH};
pub use zeta::{hurwitz_zeta, polygamma, riemann_zeta, riemann_zeta_deriv};

pub(crate) use zeta::bernoulli_2k;

use crate::error::{Error, Result};

/// Euler-Mascheroni constant gamma.
pub const EULER_GAMMA: f64 = 0.5772156649015328606;

/// First Stieltjes constant gamma_1 (coefficient of -(s-1) in the Laurent
/// expansion of zeta at s=1), to 20 digits.
pub const STIELTJES_1: f64 = -0.07281584548367672486;

/// Shared numeric options for series and quadrature driven evaluators.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    /// Absolute error goal for series summation.
    pub target_abs_tol: f64,
    /// Hard cap on the number of series terms across a single evaluation.
    pub max_terms: usize,
    /// Quadrature nodes per panel (per refinement side for DE rules).
    pub quad_points: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            target_abs_tol: 1e-12,
            max_terms: 10_000_000,
            quad_points: 64,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::Domain("target_abs_tol must be > 0".into()));
        }
        if self.max_terms < 10 {
            return Err(Error::Domain("max_terms must be >= 10".into()));
        }
        if self.quad_points < 8 {
            return Err(Error::Domain("quad_points must be >= 8".into()));
        }
        Ok(())
    }
}

/// Immutable bundle of the analytic constants that appear in closed-form
/// Laurent coefficients.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    pub euler_gamma: f64,
    pub stieltjes_1: f64,
    pub pi: f64,
}

impl Constants {
    pub const fn standard() -> Self {
        Constants {
            euler_gamma: EULER_GAMMA,
            stieltjes_1: STIELTJES_1,
            pi: std::f64::consts::PI,
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Harmonic number H_n, with H_0 = 0.
pub fn harmonic(n: i64) -> Result<f64> {
    if n < 0 {
        return Err(Error::Domain(format!("harmonic: n = {n} < 0")));
    }
    // summed smallest-first so H_n is exact to one ulp for the n used here
    Ok((1..=n).rev().map(|k| 1.0 / k as f64).sum())
}

/// Binomial coefficient over all integer pairs, with the conventions
/// C(-1,0) = 1, C(c,-1) = 0 for c != -1, C(-1,-1) = 1, and C(a,b) = 0 for
/// 0 <= a < b. Negative upper arguments with b >= 0 use the falling
/// factorial a(a-1)...(a-b+1)/b!.
pub fn binom_ext(a: i64, b: i64) -> i64 {
    if b < 0 {
        return if a == b { 1 } else { 0 };
    }
    if a >= 0 && b > a {
        return 0;
    }
    let mut num: i128 = 1;
    for j in 0..b as i128 {
        num *= a as i128 - j;
    }
    let mut den: i128 = 1;
    for j in 1..=b as i128 {
        den *= j;
    }
    (num / den) as i64
}

/// n! as f64 (exact through n = 22).
pub(crate) fn factorial(n: i64) -> f64 {
    debug_assert!(n >= 0);
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0).unwrap(), 0.0);
        assert_eq!(harmonic(1).unwrap(), 1.0);
        assert!((harmonic(4).unwrap() - 25.0 / 12.0).abs() < 1e-15);
        assert!(harmonic(-1).is_err());
    }

    #[test]
    fn binom_conventions() {
        assert_eq!(binom_ext(-1, 0), 1);
        assert_eq!(binom_ext(5, -1), 0);
        assert_eq!(binom_ext(-1, -1), 1);
        assert_eq!(binom_ext(3, 5), 0);
        assert_eq!(binom_ext(6, 2), 15);
        assert_eq!(binom_ext(0, 0), 1);
        assert_eq!(binom_ext(-2, 1), -2);
        assert_eq!(binom_ext(-1, 2), 1);
    }

    #[test]
    fn constants_sane() {
        let c = Constants::standard();
        assert!((c.euler_gamma - 0.5772156649015329).abs() < 1e-15);
        assert!(c.stieltjes_1 < 0.0 && (c.stieltjes_1 + 0.0728158454836767).abs() < 1e-14);
        assert_eq!(c.pi, PI);
    }

    #[test]
    fn options_validate() {
        assert!(EvalOptions::default().validate().is_ok());
        let bad = EvalOptions {
            target_abs_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
