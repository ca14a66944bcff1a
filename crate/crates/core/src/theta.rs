//! The generalized Mordell-Tornheim zeta
//!     Theta(r,s,t,x) = sum_{n,m >= 1} n^{-r} m^{-s} (n + m x)^{-t}
//! inside its convergence region D: r+t > 1, s+t > 1, r+s+t > 2.
//!
//! `theta_direct` sums the double series with Euler-Maclaurin tails on both
//! indices (the tail integrals evaluated by quadrature, never by zeta
//! identities, so it stays an independent oracle). `theta_series_eval`
//! implements the closed evaluation in terms of zeta values, the gamma+psi
//! series and polygamma series, which also continues the function in s.

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{
    self, binom_ext, digamma, factorial, hurwitz_zeta, polygamma, riemann_zeta,
    riemann_zeta_deriv, EvalOptions, EULER_GAMMA,
};

/// Margin kept between direct-summation arguments and the boundary of D.
pub const D_MARGIN: f64 = 0.05;

/// Residual tolerance used by the structural identity checks.
pub const CHECK_TOL: f64 = 1e-9;

/// Argument tuple (r, s, t, x) of Theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPoint {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub x: f64,
}

impl ThetaPoint {
    pub fn new(r: f64, s: f64, t: f64, x: f64) -> Result<Self> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("ThetaPoint: x = {x} must be > 0")));
        }
        Ok(ThetaPoint { r, s, t, x })
    }

    /// Whether (r, s, t) lies in the open convergence region D.
    pub fn in_domain_d(&self) -> bool {
        self.domain_margin() > 0.0
    }

    /// min(r+t-1, s+t-1, r+s+t-2); positive inside D.
    pub fn domain_margin(&self) -> f64 {
        let a = self.r + self.t - 1.0;
        let b = self.s + self.t - 1.0;
        let c = self.r + self.s + self.t - 2.0;
        a.min(b).min(c)
    }

    fn require_margin(&self, what: &str) -> Result<()> {
        if self.domain_margin() < D_MARGIN {
            return Err(Error::Domain(format!(
                "{what}: ({}, {}, {}) within {D_MARGIN} of the boundary of D",
                self.r, self.s, self.t
            )));
        }
        Ok(())
    }
}

/// Outcome of one identity residual check.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub evaluator: String,
}

impl IdentityReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, tolerance: f64, evaluator: &str) -> Self {
        let residual = (lhs - rhs).abs();
        IdentityReport {
            name: name.to_string(),
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
            evaluator: evaluator.to_string(),
        }
    }
}

/// Value with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy)]
pub struct ThetaEval {
    pub value: f64,
    pub err_est: f64,
    /// Set when the error estimate exceeds the requested tolerance.
    pub accuracy_warning: bool,
}

const INNER_N: usize = 48;
const OUTER_M: usize = 112;

/// log-derivative coefficients L_j = (-1)^j (j-1)! (r u^{-j} + t (u+c)^{-j})
/// of f(u) = u^{-r} (u+c)^{-t}, used to build f', f''', f^(5).
fn log_derivs(r: f64, t: f64, u: f64, c: f64) -> [f64; 5] {
    let mut out = [0.0; 5];
    let mut fact = 1.0;
    for j in 1..=5usize {
        if j > 1 {
            fact *= (j - 1) as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        out[j - 1] = sign * fact * (r / u.powi(j as i32) + t / (u + c).powi(j as i32));
    }
    out
}

/// Inner sum S_{r,t}(c) = sum_{n>=1} n^{-r} (n+c)^{-t} with an
/// Euler-Maclaurin tail from n = INNER_N; the tail integral is evaluated
/// analytically when one exponent vanishes and by tanh-sinh otherwise.
fn inner_sum(r: f64, t: f64, c: f64, quad_tol: f64, nfev: &mut usize) -> (f64, f64) {
    let nn = INNER_N as f64;
    let mut sum = 0.0;
    for n in (1..INNER_N).rev() {
        let nf = n as f64;
        sum += nf.powf(-r) * (nf + c).powf(-t);
    }
    *nfev += INNER_N;

    // tail integral int_N^inf u^{-r} (u+c)^{-t} du
    let (integral, qerr) = if t == 0.0 {
        (nn.powf(1.0 - r) / (r - 1.0), 0.0)
    } else if r == 0.0 {
        ((nn + c).powf(1.0 - t) / (t - 1.0), 0.0)
    } else {
        // u = N/w: N^{1-r} int_0^1 w^{r+t-2} (N + c w)^{-t} dw; the w -> 0
        // exponent can sit barely above -1, so integrate in log space
        let scale = nn.powf(1.0 - r);
        let res = quad::lower_panel_log(
            |w| w.powf(r + t - 2.0) * (nn + c * w).powf(-t),
            1.0,
            quad_tol / scale.abs().max(1e-300),
            9,
        );
        *nfev += res.nfev;
        (scale * res.value, scale.abs() * res.err_est)
    };

    let f = nn.powf(-r) * (nn + c).powf(-t);
    let l = log_derivs(r, t, nn, c);
    let f1 = f * l[0];
    let f3 = f * (l[0] * l[0] * l[0] + 3.0 * l[0] * l[1] + l[2]);
    let f5 = f * (l[0].powi(5)
        + 10.0 * l[0].powi(3) * l[1]
        + 10.0 * l[0] * l[0] * l[2]
        + 15.0 * l[0] * l[1] * l[1]
        + 5.0 * l[0] * l[3]
        + 10.0 * l[1] * l[2]
        + l[4]);
    let tail = integral + 0.5 * f - f1 / 12.0 + f3 / 720.0 - f5 / 30240.0;
    // remainder is of the order of the first omitted correction
    let rho = ((r.abs() + t.abs() + 2.0) / nn).powi(7);
    let err = f.abs() * rho / 1.2e6 + qerr;
    (sum + tail, err)
}

/// Direct evaluation of Theta with error estimate.
pub fn theta_direct_detailed(p: &ThetaPoint, opts: &EvalOptions) -> Result<ThetaEval> {
    opts.validate()?;
    p.require_margin("theta_direct")?;
    let (r, s, t, x) = (p.r, p.s, p.t, p.x);

    let mut nfev = 0usize;
    let inner_tol = (opts.target_abs_tol * 1e-4).max(1e-17);
    let mut value = 0.0;
    let mut err = 0.0;
    for m in (1..OUTER_M).rev() {
        let mf = m as f64;
        let (sm, em) = inner_sum(r, t, mf * x, inner_tol, &mut nfev);
        let w = mf.powf(-s);
        value += w * sm;
        err += w.abs() * em;
        if nfev > opts.max_terms {
            return Err(Error::Budget(format!(
                "theta_direct: {nfev} evaluations exceed max_terms = {}",
                opts.max_terms
            )));
        }
    }

    // outer Euler-Maclaurin tail from m = OUTER_M
    let mm = OUTER_M as f64;
    let outer_tol = (opts.target_abs_tol * 0.1).max(1e-16);
    let tail_int = quad::exp_sinh(
        |mu| {
            let (sv, _) = inner_sum(r, t, mu * x, inner_tol, &mut nfev);
            mu.powf(-s) * sv
        },
        mm,
        outer_tol,
        9,
    );
    nfev += tail_int.nfev;
    err += tail_int.err_est;

    // derivatives of G(mu) = mu^{-s} S(mu x) at mu = M via Leibniz;
    // S^{(k)}(c) = (-1)^k poch(t,k) S_{r,t+k}(c)
    let mut s_derivs = [0.0f64; 6];
    for (k, slot) in s_derivs.iter_mut().enumerate() {
        let (sv, ev) = inner_sum(r, t + k as f64, mm * x, inner_tol, &mut nfev);
        *slot = sv;
        err += ev;
    }
    let g_deriv = |n: usize| -> f64 {
        let mut acc = 0.0;
        for i in 0..=n {
            let ci = binom_ext(n as i64, i as i64) as f64;
            let dmu = specfun::pochhammer(s, i as i64) * mm.powf(-s - i as f64);
            let dsc = specfun::pochhammer(t, (n - i) as i64) * x.powf((n - i) as f64);
            acc += ci * dmu * dsc * s_derivs[n - i];
        }
        if n % 2 == 0 {
            acc
        } else {
            -acc
        }
    };
    let g0 = g_deriv(0);
    let g1 = g_deriv(1);
    let g3 = g_deriv(3);
    let g5 = g_deriv(5);
    let tail = tail_int.value + 0.5 * g0 - g1 / 12.0 + g3 / 720.0 - g5 / 30240.0;
    err += g0.abs() * ((s.abs() + t.abs() + r.abs() + 2.0) / mm).powi(7) / 1.2e6;

    value += tail;
    if nfev > opts.max_terms {
        return Err(Error::Budget(format!(
            "theta_direct: {nfev} evaluations exceed max_terms = {}",
            opts.max_terms
        )));
    }
    Ok(ThetaEval {
        value,
        err_est: err,
        accuracy_warning: err > opts.target_abs_tol,
    })
}

/// Direct evaluation of Theta(r,s,t,x) inside D (with margin).
pub fn theta_direct(p: &ThetaPoint, opts: &EvalOptions) -> Result<f64> {
    theta_direct_detailed(p, opts).map(|e| e.value)
}

// ---------------------------------------------------------------------------
// accelerated psi-series building blocks (shared with limits and herglotz)
// ---------------------------------------------------------------------------

fn phi_shift(y: f64) -> f64 {
    // psi(y+1) - log y = 1/(2y) - 1/(12 y^2) + 1/(120 y^4) - ...
    digamma(y + 1.0).expect("y > 0") - y.ln()
}

/// A(q, x) = sum_{m>=1} (gamma + psi(m x + 1)) / m^q, continued in q via
/// zeta and zeta'; requires q > 0.1 and q != 1.
pub(crate) fn psi_shift_sum(q: f64, x: f64) -> Result<f64> {
    if q < 0.1 {
        return Err(Error::Domain(format!("psi_shift_sum: q = {q} too small")));
    }
    if (q - 1.0).abs() < 1e-9 {
        return Err(Error::Pole {
            what: "psi_shift_sum".into(),
            at: q,
        });
    }
    let m0 = 32.max((24.0 / x).ceil() as usize);
    let mut sum = 0.0;
    for m in (1..=m0).rev() {
        let mf = m as f64;
        sum += phi_shift(mf * x) / mf.powf(q);
    }
    let z = |p: f64| hurwitz_zeta(p, m0 as f64 + 1.0);
    let x2 = x * x;
    let tail = z(q + 1.0)? / (2.0 * x) - z(q + 2.0)? / (12.0 * x2) + z(q + 4.0)? / (120.0 * x2 * x2)
        - z(q + 6.0)? / (252.0 * x2 * x2 * x2);
    Ok((EULER_GAMMA + x.ln()) * riemann_zeta(q)? - riemann_zeta_deriv(q)? + sum + tail)
}

/// P(k, p, x) = sum_{m>=1} psi^{(k)}(m x + 1) / m^p for k >= 1, continued
/// via the asymptotic expansion of psi^{(k)}; requires k + p > 1.
pub(crate) fn polygamma_shift_sum(k: i64, p: f64, x: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain(format!("polygamma_shift_sum: k = {k} < 1")));
    }
    if k as f64 + p <= 1.0 + 1e-9 {
        return Err(Error::Domain(format!(
            "polygamma_shift_sum: k + p = {} <= 1",
            k as f64 + p
        )));
    }
    let m0 = 32.max((24.0 / x).ceil() as usize);
    let mut sum = 0.0;
    for m in (1..=m0).rev() {
        let mf = m as f64;
        sum += polygamma(k, mf * x + 1.0)? / mf.powf(p);
    }
    // psi^{(k)}(y+1) = (-1)^{k-1} [ (k-1)! y^{-k} - k!/2 y^{-k-1}
    //                  + sum_i B_{2i} ((2i+k-1)!/(2i)!) y^{-2i-k} ]
    let z = |a: f64| hurwitz_zeta(a, m0 as f64 + 1.0);
    let sign = if (k - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let kf = k as f64;
    let mut tail = factorial(k - 1) * x.powf(-kf) * z(kf + p)?
        - 0.5 * factorial(k) * x.powf(-kf - 1.0) * z(kf + p + 1.0)?;
    for i in 1..=6i64 {
        let c = specfun::bernoulli_2k(i as usize) * specfun::pochhammer((2 * i + 1) as f64, k - 1);
        let e = (2 * i) as f64 + kf;
        tail += c * x.powf(-e) * z(e + p)?;
    }
    Ok(sum + sign * tail)
}

/// Closed series evaluation of Theta for integer r, t >= 0 (this is the
/// analytic continuation in s): the zeta-zeta block over i, the gamma+psi
/// block with weight C(r+t-2, t-1), and the polygamma block over j.
pub fn theta_series_eval(r: i64, s: f64, t: i64, x: f64, opts: &EvalOptions) -> Result<f64> {
    opts.validate()?;
    if r < 0 || t < 0 || r + t < 1 {
        return Err(Error::Domain(format!(
            "theta_series_eval: need r, t >= 0 with r + t >= 1, got ({r}, {t})"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("theta_series_eval: x = {x} <= 0")));
    }
    let rf = r as f64;
    let tf = t as f64;
    if s <= 2.0 - rf - tf + 1e-9 {
        return Err(Error::Domain(format!(
            "theta_series_eval: s = {s} <= 2 - r - t = {}",
            2.0 - rf - tf
        )));
    }
    // pole screen for the explicit zeta factors
    for i in 0..=(r - 2).max(-1) {
        if (s + tf + i as f64 - 1.0).abs() < 1e-9 {
            return Err(Error::Pole {
                what: "theta_series_eval: zeta(s+t+i)".into(),
                at: s,
            });
        }
    }
    let q = rf + s + tf - 1.0;

    let mut value = 0.0;
    // zeta-zeta block, i = 0 .. r-2
    for i in 0..=(r - 2) {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let c = binom_ext(i + t - 1, i) as f64;
        if c != 0.0 {
            value += sign * c * riemann_zeta(s + tf + i as f64)? * riemann_zeta(rf - i as f64)?
                / x.powf(tf + i as f64);
        }
    }
    // gamma + psi block
    let c_a = binom_ext(r + t - 2, t - 1) as f64;
    if c_a != 0.0 {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        value -= sign * c_a * psi_shift_sum(q, x)? / x.powf(rf + tf - 1.0);
    }
    // polygamma block, j = 0 .. t-2
    for j in 0..=(t - 2) {
        let c = binom_ext(j + r - 1, j) as f64;
        if c == 0.0 {
            continue;
        }
        let k = t - j - 1;
        let signs = if (r + t - j) % 2 == 0 { 1.0 } else { -1.0 };
        value += signs * c / factorial(t - j - 1) / x.powf((j + r) as f64)
            * polygamma_shift_sum(k, rf + s + j as f64, x)?;
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// structural identity checks
// ---------------------------------------------------------------------------

/// Split relation Theta(r,s,t,x) = Theta(r-1,s,t+1,x) + x Theta(r,s-1,t+1,x).
pub fn check_split(p: &ThetaPoint, opts: &EvalOptions) -> Result<IdentityReport> {
    let a = ThetaPoint::new(p.r - 1.0, p.s, p.t + 1.0, p.x)?;
    let b = ThetaPoint::new(p.r, p.s - 1.0, p.t + 1.0, p.x)?;
    p.require_margin("check_split")?;
    a.require_margin("check_split (shifted)")?;
    b.require_margin("check_split (shifted)")?;
    let lhs = theta_direct(p, opts)?;
    let rhs = theta_direct(&a, opts)? + p.x * theta_direct(&b, opts)?;
    Ok(IdentityReport::new("split", lhs, rhs, CHECK_TOL, "direct"))
}

/// Inversion Theta(r,s,t,x) = x^{-t} Theta(s,r,t,1/x).
pub fn check_inversion(p: &ThetaPoint, opts: &EvalOptions) -> Result<IdentityReport> {
    p.require_margin("check_inversion")?;
    let q = ThetaPoint::new(p.s, p.r, p.t, 1.0 / p.x)?;
    let lhs = theta_direct(p, opts)?;
    let rhs = p.x.powf(-p.t) * theta_direct(&q, opts)?;
    Ok(IdentityReport::new(
        "inversion",
        lhs,
        rhs,
        CHECK_TOL,
        "direct",
    ))
}

/// n-fold recursion Theta(r,s,t,x) = sum_l C(n,l) x^l Theta(r-n+l, s-l, t+n, x).
pub fn check_recursion(n: i64, p: &ThetaPoint, opts: &EvalOptions) -> Result<IdentityReport> {
    if n < 0 {
        return Err(Error::Domain(format!("check_recursion: n = {n} < 0")));
    }
    p.require_margin("check_recursion")?;
    let lhs = theta_direct(p, opts)?;
    let mut rhs = 0.0;
    for l in 0..=n {
        let q = ThetaPoint::new(p.r - n as f64 + l as f64, p.s - l as f64, p.t + n as f64, p.x)?;
        q.require_margin("check_recursion (summand)")?;
        rhs += binom_ext(n, l) as f64 * p.x.powi(l as i32) * theta_direct(&q, opts)?;
    }
    Ok(IdentityReport::new(
        &format!("recursion(n={n})"),
        lhs,
        rhs,
        CHECK_TOL,
        "direct",
    ))
}

/// Double zeta sum_{n>=1} sum_{m>=n} m^{-s1} n^{-s2}, diagonal included.
pub fn double_zeta(s1: f64, s2: f64, opts: &EvalOptions) -> Result<f64> {
    opts.validate()?;
    if s1 <= 1.0 + 1e-9 || s1 + s2 <= 2.0 + 1e-9 {
        return Err(Error::Domain(format!(
            "double_zeta: need s1 > 1 and s1 + s2 > 2, got ({s1}, {s2})"
        )));
    }
    let n0 = 48usize;
    let mut sum = 0.0;
    for n in (1..=n0).rev() {
        let nf = n as f64;
        sum += hurwitz_zeta(s1, nf)? / nf.powf(s2);
    }
    // tail via the Euler-Maclaurin expansion of zeta(s1, n) in powers of 1/n
    let z = |p: f64| hurwitz_zeta(p, n0 as f64 + 1.0);
    let mut tail = z(s1 + s2 - 1.0)? / (s1 - 1.0) + 0.5 * z(s1 + s2)?;
    let mut fact = 2.0;
    for i in 1..=8usize {
        let c = specfun::bernoulli_2k(i) / fact * specfun::pochhammer(s1, 2 * i as i64 - 1);
        tail += c * z(s1 + s2 + 2.0 * i as f64 - 1.0)?;
        fact *= ((2 * i + 1) * (2 * i + 2)) as f64;
    }
    Ok(sum + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn opts() -> EvalOptions {
        EvalOptions::default()
    }

    fn zeta(s: f64) -> f64 {
        riemann_zeta(s).unwrap()
    }

    #[test]
    fn direct_diagonal_counting() {
        // Theta(0,0,3,1) = sum_{k>=2} (k-1) k^{-3} = zeta(2) - zeta(3)
        let p = ThetaPoint::new(0.0, 0.0, 3.0, 1.0).unwrap();
        let v = theta_direct(&p, &opts()).unwrap();
        assert!((v - (zeta(2.0) - zeta(3.0))).abs() < 1e-12, "{v}");
    }

    #[test]
    fn direct_tornheim_classical() {
        // Theta(1,1,1,1) = 2 zeta(3)
        let p = ThetaPoint::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let v = theta_direct(&p, &opts()).unwrap();
        assert!((v - 2.0 * zeta(3.0)).abs() < 1e-12, "{v}");
    }

    #[test]
    fn direct_t_zero_product() {
        // Theta(a,b,0,x) = zeta(a) zeta(b) for any x
        let p = ThetaPoint::new(2.0, 2.0, 0.0, 7.0).unwrap();
        let v = theta_direct(&p, &opts()).unwrap();
        let z2 = PI * PI / 6.0;
        assert!((v - z2 * z2).abs() < 1e-12, "{v}");
    }

    #[test]
    fn direct_error_estimate_reported() {
        let p = ThetaPoint::new(2.0, 2.0, 2.0, 1.0).unwrap();
        let e = theta_direct_detailed(&p, &opts()).unwrap();
        assert!(!e.accuracy_warning, "err_est = {}", e.err_est);
        // frozen brute-force partial sum (N = 1200, tail < 2e-9)
        assert!((e.value - 0.339114353364588457).abs() < 2e-9);
    }

    #[test]
    fn direct_domain_errors() {
        let p = ThetaPoint::new(1.0, 3.0, 0.0, 5.0).unwrap();
        assert!(theta_direct(&p, &opts()).is_err()); // r + t = 1 on boundary
        assert!(ThetaPoint::new(1.0, 1.0, 1.0, 0.0).is_err());
        let near = ThetaPoint::new(1.02, 3.0, 0.0, 1.0).unwrap();
        assert!(theta_direct(&near, &opts()).is_err()); // inside the margin band
    }

    #[test]
    fn series_eval_matches_direct() {
        let o = opts();
        for &(r, s, t, x) in &[
            (2i64, 2.0, 2i64, 1.0),
            (0, 2.0, 2, 1.0),
            (1, 2.5, 1, 2.0),
            (3, 3.0, 0, 0.5),
            (2, 2.5, 3, 1.0 / 3.0),
        ] {
            let p = ThetaPoint::new(r as f64, s, t as f64, x).unwrap();
            if p.domain_margin() < D_MARGIN {
                continue;
            }
            let a = theta_direct(&p, &o).unwrap();
            let b = theta_series_eval(r, s, t, x, &o).unwrap();
            assert!(
                (a - b).abs() < 1e-10,
                "({r},{s},{t},{x}): direct {a} vs series {b}"
            );
        }
    }

    #[test]
    fn series_eval_domain() {
        assert!(theta_series_eval(0, 3.0, 0, 1.0, &opts()).is_err()); // r+t=0
        assert!(theta_series_eval(2, -1.0, 1, 1.0, &opts()).is_err()); // s too small
    }

    #[test]
    fn split_residual() {
        let o = opts();
        let p = ThetaPoint::new(2.0, 2.0, 2.0, 1.0).unwrap();
        let rep = check_split(&p, &o).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
        let p = ThetaPoint::new(3.0, 3.0, 1.0, 0.5).unwrap();
        let rep = check_split(&p, &o).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn inversion_residual() {
        let o = opts();
        let p = ThetaPoint::new(2.0, 3.0, 2.0, 2.0).unwrap();
        let rep = check_inversion(&p, &o).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
        // non-integer point
        let p = ThetaPoint::new(1.5, 2.5, 1.2, 0.3).unwrap();
        let rep = check_inversion(&p, &o).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
        // symmetric fixed point: exactly zero residual
        let p = ThetaPoint::new(2.0, 2.0, 2.0, 1.0).unwrap();
        let rep = check_inversion(&p, &o).unwrap();
        assert_eq!(rep.residual, 0.0);
    }

    #[test]
    fn recursion_residuals() {
        let o = opts();
        let p = ThetaPoint::new(2.0, 2.0, 2.0, 1.0).unwrap();
        let rep = check_recursion(0, &p, &o).unwrap();
        assert_eq!(rep.residual, 0.0); // n = 0 is vacuous
        let rep = check_recursion(1, &p, &o).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
        let p = ThetaPoint::new(3.0, 3.0, 1.0, 2.0).unwrap();
        let rep = check_recursion(2, &p, &o).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn double_zeta_values() {
        let o = opts();
        let z3 = zeta(3.0);
        let z4 = zeta(4.0);
        let v = double_zeta(2.0, 1.0, &o).unwrap();
        assert!((v - 2.0 * z3).abs() < 1e-12, "{v}");
        let v = double_zeta(3.0, 1.0, &o).unwrap();
        assert!((v - PI.powi(4) / 72.0).abs() < 1e-12, "{v}");
        let z2 = zeta(2.0);
        let v = double_zeta(2.0, 2.0, &o).unwrap();
        assert!((v - ((z2 * z2 - z4) / 2.0 + z4)).abs() < 1e-12, "{v}");
        assert!(double_zeta(1.0, 5.0, &o).is_err());
    }

    #[test]
    fn double_zeta_stuffle() {
        let o = opts();
        for &(a, b) in &[(2.0, 2.0), (2.0, 3.0), (3.0, 2.0), (3.0, 3.0)] {
            let lhs = double_zeta(a, b, &o).unwrap() + double_zeta(b, a, &o).unwrap();
            let rhs = zeta(a) * zeta(b) + zeta(a + b);
            assert!((lhs - rhs).abs() < 1e-12, "({a},{b}): {lhs} vs {rhs}");
        }
    }

    #[test]
    fn psi_series_helpers() {
        // A(q, 1) with psi(m+1) = H_m - gamma: sum H_m / m^q
        // q = 3: sum (gamma + psi(m+1))/m^3 = sum H_m/m^3 = pi^4/72
        let v = psi_shift_sum(3.0, 1.0).unwrap();
        assert!((v - PI.powi(4) / 72.0).abs() < 1e-12, "{v}");
        // P(1, 2, 1) = sum psi'(m+1)/m^2 = zeta(2)^2 - 2 zeta(3)... use
        // Theta(0,2,2,1) = sum_m psi'(m+1)/m^2 and compare against direct
        let o = opts();
        let p = ThetaPoint::new(0.0, 2.0, 2.0, 1.0).unwrap();
        let a = theta_direct(&p, &o).unwrap();
        let b = polygamma_shift_sum(1, 2.0, 1.0).unwrap();
        assert!((a - b).abs() < 1e-11, "{a} vs {b}");
    }
}
