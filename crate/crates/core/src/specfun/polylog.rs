//! Polylogarithms of an exponential argument: Li_s(e^{-y}) for y > 0 and
//! real order s, plus the real dilogarithm on (0, 1].
//!
//! For y above the switch point the defining series in e^{-y} converges
//! geometrically. Below it the small-y expansion
//!     Li_s(e^{-y}) = Gamma(1-s) y^{s-1} + sum_k (-1)^k zeta(s-k) y^k / k!
//! is used for non-integer (and non-positive integer) s, the log-corrected
//! variant for positive integer s, and a Stirling-number closed form is
//! available for non-positive integer s. The expansion converges for
//! |y| < 2 pi; the switch at 1/2 keeps both branches fast.

use super::gamma::gamma;
use super::zeta::riemann_zeta;
use super::{factorial, harmonic};
use crate::error::{Error, Result};

/// Branch switch point between the defining series and the y -> 0 expansion.
pub const Y_SWITCH: f64 = 0.5;

const MAX_EXPANSION_TERMS: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// s not a positive integer: leading term Gamma(1-s) y^{s-1}.
    General,
    /// s = n >= 1: leading term (-1)^{n-1} (H_{n-1} - ln y) y^{n-1} / (n-1)!.
    PositiveInt(i64),
}

/// Precomputed small-y expansion of Li_s(e^{-y}) for a fixed order s,
/// reusable across many evaluations (quadrature nodes, tail series).
#[derive(Debug, Clone)]
pub struct LiSeries {
    s: f64,
    kind: Kind,
    /// coeffs[k] = (-1)^k zeta(s-k) / k!  (slot s-1 zeroed for integer s).
    coeffs: Vec<f64>,
    /// Gamma(1-s) for the General kind; unused otherwise.
    gamma_1ms: f64,
}

impl LiSeries {
    pub fn new(s: f64) -> Result<Self> {
        let rounded = s.round();
        let kind = if (s - rounded).abs() < 1e-12 && rounded >= 1.0 {
            Kind::PositiveInt(rounded as i64)
        } else {
            Kind::General
        };
        let mut coeffs = Vec::with_capacity(MAX_EXPANSION_TERMS);
        let mut kfact = 1.0;
        let mut small_run = 0;
        for k in 0..MAX_EXPANSION_TERMS {
            if k > 0 {
                kfact *= k as f64;
            }
            let arg = s - k as f64;
            let c = if (arg - 1.0).abs() < 1e-12 {
                0.0 // integer-s log slot, handled by the closed correction
            } else {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * riemann_zeta(arg)? / kfact
            };
            coeffs.push(c);
            // two consecutive negligible terms at y = 1/2 end the table;
            // a single one may be a trivial zero of zeta
            if k as f64 > s + 4.0 && (c * Y_SWITCH.powi(k as i32)).abs() < 1e-22 {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        let gamma_1ms = match kind {
            Kind::General => gamma(1.0 - s),
            Kind::PositiveInt(_) => 0.0,
        };
        Ok(LiSeries {
            s,
            kind,
            coeffs,
            gamma_1ms,
        })
    }

    pub fn order(&self) -> f64 {
        self.s
    }

    /// Expansion coefficient (-1)^k zeta(s-k)/k!, zero beyond the table.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Li_s(e^{-y}) for any y > 0.
    pub fn eval(&self, y: f64) -> f64 {
        if y >= Y_SWITCH {
            direct_series(self.s, y)
        } else {
            self.eval_small(y)
        }
    }

    /// Small-y branch (y < Y_SWITCH).
    pub fn eval_small(&self, y: f64) -> f64 {
        let mut sum = 0.0;
        let mut yk = 1.0;
        for &c in &self.coeffs {
            sum += c * yk;
            yk *= y;
        }
        match self.kind {
            Kind::General => self.gamma_1ms * y.powf(self.s - 1.0) + sum,
            Kind::PositiveInt(n) => {
                let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let h = harmonic(n - 1).expect("n >= 1");
                sign * (h - y.ln()) * y.powi((n - 1) as i32) / factorial(n - 1) + sum
            }
        }
    }

    /// y^{1-s} Li_s(e^{-y}) for the General kind with s < 1; bounded as
    /// y -> 0, which lets callers do the power bookkeeping themselves.
    pub fn eval_small_scaled(&self, y: f64) -> f64 {
        debug_assert!(matches!(self.kind, Kind::General) && self.s < 1.0);
        let mut sum = 0.0;
        let p = 1.0 - self.s;
        let mut ykp = y.powf(p); // y^{k+1-s}
        for &c in &self.coeffs {
            sum += c * ykp;
            ykp *= y;
        }
        self.gamma_1ms + sum
    }
}

/// Defining series sum_{u>=1} e^{-uy}/u^s; geometric for y >= Y_SWITCH.
fn direct_series(s: f64, y: f64) -> f64 {
    let q = (-y).exp();
    if q == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut qu = 1.0;
    // for negative s the terms rise like u^{-s} before the exponential wins
    let mode = if s < 0.0 { (-s / y).ceil() as usize + 2 } else { 1 };
    for u in 1..=200_000usize {
        qu *= q;
        if qu == 0.0 {
            break;
        }
        let term = qu * (u as f64).powf(-s);
        sum += term;
        if u >= mode && term.abs() < 1e-17 * sum.abs() + 1e-300 {
            break;
        }
    }
    sum
}

/// Li_{-n}(z) = sum_{k=0..n} k! S(n+1, k+1) (z/(1-z))^{k+1} with Stirling
/// subset numbers.
fn polylog_neg_int_closed(n: usize, z: f64) -> f64 {
    // row S(n+1, .) of the Stirling recurrence
    let mut row = vec![0.0f64; n + 2];
    row[1] = 1.0; // S(1,1)
    for m in 2..=(n + 1) {
        for k in (1..=m).rev() {
            row[k] = k as f64 * row[k] + row[k - 1];
        }
    }
    let w = z / (1.0 - z);
    let mut sum = 0.0;
    let mut kfact = 1.0;
    let mut wp = w;
    for k in 0..=n {
        if k > 0 {
            kfact *= k as f64;
        }
        sum += kfact * row[k + 1] * wp;
        wp *= w;
    }
    sum
}

/// Li_s(e^{-y}) for y > 0.
///
/// Dispatch: defining series for y >= 1/2; below that the closed rational
/// form for non-positive integer s, the log-corrected expansion for
/// positive integer s, and the general expansion otherwise.
pub fn polylog_exp(s: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("polylog_exp: y = {y} <= 0")));
    }
    if y >= Y_SWITCH {
        return Ok(direct_series(s, y));
    }
    let rounded = s.round();
    if (s - rounded).abs() < 1e-12 && rounded <= 0.0 && rounded >= -40.0 {
        return Ok(polylog_neg_int_closed(-rounded as usize, (-y).exp()));
    }
    Ok(LiSeries::new(s)?.eval_small(y))
}

/// Real dilogarithm Li_2(z) on (0, 1].
pub fn dilog(z: f64) -> Result<f64> {
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::Domain(format!("dilog: z = {z} outside (0, 1]")));
    }
    let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    if z == 1.0 {
        return Ok(pi2_6);
    }
    if z > 0.5 {
        // Li2(z) + Li2(1-z) = pi^2/6 - ln z ln(1-z)
        return Ok(pi2_6 - z.ln() * (1.0 - z).ln() - dilog_series(1.0 - z));
    }
    Ok(dilog_series(z))
}

fn dilog_series(z: f64) -> f64 {
    debug_assert!(z <= 0.5);
    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 1..200usize {
        zk *= z;
        let term = zk / ((k * k) as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn li1_closed_form() {
        for &y in &[0.1, 0.4, 0.8, 2.0] {
            let v = polylog_exp(1.0, y).unwrap();
            let closed = -(1.0 - (-y).exp()).ln();
            assert!((v - closed).abs() < 1e-13, "y={y}: {v} vs {closed}");
        }
    }

    #[test]
    fn li0_geometric() {
        for &y in &[0.2, 0.5, 1.5] {
            let v = polylog_exp(0.0, y).unwrap();
            let e = (-y).exp();
            assert!((v - e / (1.0 - e)).abs() < 1e-13);
        }
    }

    #[test]
    fn li_neg_int_closed_matches_series() {
        // frozen: Li_{-2}(e^{-0.3}) = 74.07159184716952457424
        let v = polylog_exp(-2.0, 0.3).unwrap();
        assert!((v - 74.07159184716952).abs() < 1e-10 * 74.0);
    }

    #[test]
    fn branch_values_frozen() {
        // Li_{2.5}(e^{-0.01}) = 1.317653792476907409191
        let v = polylog_exp(2.5, 0.01).unwrap();
        assert!((v - 1.3176537924769074).abs() < 1e-13);
        // Li_{1.5}(e^{-0.5}) = 0.8104904523267291727689 (direct-series side)
        let v = polylog_exp(1.5, 0.5).unwrap();
        assert!((v - 0.8104904523267292).abs() < 1e-13);
        // Li_3(e^{-0.2}) = 0.9359199598902310223294 (log-corrected branch)
        let v = polylog_exp(3.0, 0.2).unwrap();
        assert!((v - 0.9359199598902310).abs() < 1e-13);
    }

    #[test]
    fn branch_agreement_at_switch() {
        for &s in &[-2.0, -1.0, 0.5, 1.5, 3.5] {
            let series = LiSeries::new(s).unwrap();
            let below = series.eval_small(Y_SWITCH - 1e-14);
            let above = direct_series(s, Y_SWITCH);
            assert!(
                (below - above).abs() < 1e-10 * (1.0 + above.abs()),
                "s={s}: {below} vs {above}"
            );
        }
    }

    #[test]
    fn dilog_values() {
        assert!((dilog(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        let l2 = 2.0_f64.ln();
        assert!((dilog(0.5).unwrap() - (PI * PI / 12.0 - l2 * l2 / 2.0)).abs() < 1e-14);
        // direct series at z = 0.1
        let mut s = 0.0;
        for k in 1..200 {
            s += 0.1_f64.powi(k) / ((k * k) as f64);
        }
        assert!((dilog(0.1).unwrap() - s).abs() < 1e-15);
        assert!(dilog(0.0).is_err());
        assert!(dilog(1.1).is_err());
    }

    #[test]
    fn scaled_small_eval() {
        let series = LiSeries::new(-0.5).unwrap();
        let y = 1e-6;
        let scaled = series.eval_small_scaled(y);
        let full = series.eval_small(y);
        assert!((scaled * y.powf(-1.5) - full).abs() < 1e-9 * full.abs());
    }
}
