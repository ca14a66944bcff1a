//! Riemann and Hurwitz zeta via Euler-Maclaurin summation, with an
//! analytically differentiated variant for zeta'. Negative-integer
//! arguments use Bernoulli values exactly; negative reals go through the
//! reflection formula.

use std::f64::consts::PI;

use super::gamma::{digamma, gamma, ln_gamma};
use crate::error::{Error, Result};

/// B_2, B_4, ..., B_30.
const BERNOULLI_2K_TABLE: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// B_{2k} for 1 <= k <= 15.
pub(crate) fn bernoulli_2k(k: usize) -> f64 {
    BERNOULLI_2K_TABLE[k - 1]
}

const EM_TERMS: usize = 13;

/// Euler-Maclaurin core for zeta(s, a) with optional s-derivative.
/// Valid for a > 0 and s away from 1 with s > -24 or so; the caller
/// enforces the domain.
pub(crate) fn hurwitz_em_raw(s: f64, a: f64, want_deriv: bool) -> (f64, f64) {
    let target = 16.0_f64.max(1.3 * s.abs());
    let n_shift = if a >= target {
        0
    } else {
        (target - a).ceil() as i64
    };
    let mut sum = 0.0;
    let mut dsum = 0.0;
    for n in (0..n_shift).rev() {
        let base = n as f64 + a;
        let t = base.powf(-s);
        sum += t;
        if want_deriv {
            dsum -= base.ln() * t;
        }
    }
    let w = a + n_shift as f64;
    let lw = w.ln();
    let w1s = w.powf(1.0 - s);
    let ws = w.powf(-s);
    // integral and half-node terms
    sum += w1s / (s - 1.0) + 0.5 * ws;
    if want_deriv {
        dsum += -w1s * lw / (s - 1.0) - w1s / ((s - 1.0) * (s - 1.0)) - 0.5 * lw * ws;
    }
    // correction terms B_2k/(2k)! (s)_{2k-1} w^{-s-2k+1}
    let mut poch = s; // (s)_1
    let mut dpoch = 1.0; // d/ds (s)_1
    let mut fact = 2.0; // (2k)!
    let mut wpow = ws / w; // w^{-s-1}
    let w2 = 1.0 / (w * w);
    let mut last = f64::INFINITY;
    for k in 1..=EM_TERMS {
        let c = bernoulli_2k(k) / fact;
        let term = c * poch * wpow;
        let mag = term.abs();
        if mag > last {
            break; // asymptotic tail started to diverge
        }
        sum += term;
        if want_deriv {
            dsum += c * (dpoch - poch * lw) * wpow;
        }
        if mag < 1e-18 * (1.0 + sum.abs()) {
            break;
        }
        last = mag;
        // advance (s)_{2k-1} -> (s)_{2k+1} and (2k)! -> (2k+2)!
        let f1 = s + (2 * k - 1) as f64;
        let f2 = s + (2 * k) as f64;
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
        poch *= f1 * f2;
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        wpow *= w2;
    }
    (sum, dsum)
}

fn near_integer(s: f64) -> Option<i64> {
    let r = s.round();
    if (s - r).abs() < 1e-12 {
        Some(r as i64)
    } else {
        None
    }
}

/// zeta(-n) for n >= 0: -1/2 at n = 0, trivial zeros at even n, Bernoulli
/// values -B_{n+1}/(n+1) at odd n.
fn zeta_neg_int(n: i64) -> f64 {
    debug_assert!(n >= 0);
    if n == 0 {
        return -0.5;
    }
    if n % 2 == 0 {
        return 0.0;
    }
    if n <= 29 {
        let k = ((n + 1) / 2) as usize;
        return -bernoulli_2k(k) / (n as f64 + 1.0);
    }
    // beyond the table: reflection with the sine evaluated exactly
    let sign = if (n - 1) % 4 == 0 { -1.0 } else { 1.0 };
    let ln_mag = -(n as f64) * 2.0_f64.ln() - (n as f64 + 1.0) * PI.ln() + ln_gamma(n as f64 + 1.0);
    sign * ln_mag.exp() * riemann_zeta_em(n as f64 + 1.0)
}

fn riemann_zeta_em(s: f64) -> f64 {
    hurwitz_em_raw(s, 1.0, false).0
}

/// Riemann zeta for real s != 1.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if (s - 1.0).abs() < 1e-12 {
        return Err(Error::Pole {
            what: "zeta".into(),
            at: s,
        });
    }
    if let Some(n) = near_integer(s) {
        if n <= 0 {
            return Ok(zeta_neg_int(-n));
        }
    }
    if s > -0.5 {
        return Ok(riemann_zeta_em(s));
    }
    // reflection: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    let chi = 2.0_f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(1.0 - s);
    Ok(chi * riemann_zeta_em(1.0 - s))
}

/// zeta'(s) for real s != 1, via the differentiated Euler-Maclaurin
/// formula for s > -1/2 and the differentiated reflection formula below.
pub fn riemann_zeta_deriv(s: f64) -> Result<f64> {
    if (s - 1.0).abs() < 1e-12 {
        return Err(Error::Pole {
            what: "zeta'".into(),
            at: s,
        });
    }
    if s == 0.0 {
        return Ok(-0.5 * (2.0 * PI).ln());
    }
    if s > -0.5 {
        return Ok(hurwitz_em_raw(s, 1.0, true).1);
    }
    // zeta'(s) = 2^s pi^(s-1) Gamma(1-s) { sin(pi s/2) [(ln 2pi - psi(1-s)) zeta(1-s)
    //            - zeta'(1-s)] + (pi/2) cos(pi s/2) zeta(1-s) }
    let (z, dz) = hurwitz_em_raw(1.0 - s, 1.0, true);
    let zp = -dz; // d/ds zeta(1-s) = -zeta'(1-s); dz is zeta'(1-s)
    let _ = zp;
    let psi1ms = digamma(1.0 - s)?;
    let pref = 2.0_f64.powf(s) * PI.powf(s - 1.0) * gamma(1.0 - s);
    let half = PI * s / 2.0;
    Ok(pref * (half.sin() * (((2.0 * PI).ln() - psi1ms) * z - dz) + (PI / 2.0) * half.cos() * z))
}

/// Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^{-s}, continued in s by
/// Euler-Maclaurin. Requires a > 0, s != 1, s > -24.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("hurwitz_zeta: a = {a} <= 0")));
    }
    if (s - 1.0).abs() < 1e-12 {
        return Err(Error::Pole {
            what: "hurwitz_zeta".into(),
            at: s,
        });
    }
    if s <= -24.0 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta: s = {s} below the Euler-Maclaurin validity range"
        )));
    }
    Ok(hurwitz_em_raw(s, a, false).0)
}

/// Polygamma psi^{(j)}(x) = (-1)^{j+1} j! zeta(j+1, x) for j >= 1, x > 0.
pub fn polygamma(j: i64, x: f64) -> Result<f64> {
    if j < 1 {
        return Err(Error::Domain(format!("polygamma: j = {j} < 1")));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("polygamma: x = {x} <= 0")));
    }
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * super::factorial(j) * hurwitz_zeta(j as f64 + 1.0, x)?)
}
