//! Analytic continuation of Theta in the third variable t through the
//! regularized integral representation: the small-y asymptotics of
//! Li_r(e^{-y}) are subtracted under the integral sign and restored in
//! closed form, which extends the t-domain past the poles of the explicit
//! Gamma/zeta terms. A least-squares Laurent fitter recovers pole
//! coefficients numerically for cross-checks against the closed forms.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{
    digamma_any, factorial, harmonic, ln_gamma_signed, pochhammer, riemann_zeta,
    riemann_zeta_deriv, LiSeries,
};

/// Which variable a Laurent expansion is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentVar {
    T,
    S,
}

/// Truncated Laurent expansion about a stated center.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    pub variable: LaurentVar,
    pub center: f64,
    pub min_order: i32,
    /// Coefficients for orders min_order ..= max_order, in order.
    pub coefficients: Vec<f64>,
}

impl LaurentSeries {
    pub fn new(
        variable: LaurentVar,
        center: f64,
        min_order: i32,
        coefficients: Vec<f64>,
    ) -> Result<Self> {
        if !(-2..=0).contains(&min_order) {
            return Err(Error::Domain(format!(
                "LaurentSeries: min_order {min_order} outside {{-2,-1,0}}"
            )));
        }
        if coefficients.is_empty() {
            return Err(Error::Domain("LaurentSeries: no coefficients".into()));
        }
        Ok(LaurentSeries {
            variable,
            center,
            min_order,
            coefficients,
        })
    }

    pub fn max_order(&self) -> i32 {
        self.min_order + self.coefficients.len() as i32 - 1
    }

    /// Coefficient of (v - center)^k; zero outside the stored range.
    pub fn coeff(&self, k: i32) -> f64 {
        if k < self.min_order || k > self.max_order() {
            0.0
        } else {
            self.coefficients[(k - self.min_order) as usize]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadScheme {
    DoubleExponential,
    AdaptiveGauss,
}

/// Panelization and tolerance for the continuation integrals.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub scheme: QuadScheme,
    /// Split points on (0, inf); must start at 0 and end at infinity.
    pub panels: Vec<f64>,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            scheme: QuadScheme::DoubleExponential,
            panels: vec![0.0, 1.0, f64::INFINITY],
            abs_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain("QuadratureSpec: abs_tol must be > 0".into()));
        }
        if self.panels.len() < 2
            || self.panels[0] != 0.0
            || *self.panels.last().unwrap() != f64::INFINITY
        {
            return Err(Error::Domain(
                "QuadratureSpec: panels must run from 0 to infinity".into(),
            ));
        }
        if self.panels.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain(
                "QuadratureSpec: panels must be strictly increasing".into(),
            ));
        }
        Ok(())
    }
}

/// Minimum distance kept from every pole of the explicit terms.
pub const POLE_GUARD: f64 = 1e-3;

fn guard_pole(label: &str, value: f64, at: f64) -> Result<()> {
    if (value - at).abs() < POLE_GUARD {
        return Err(Error::Pole {
            what: label.to_string(),
            at,
        });
    }
    Ok(())
}

/// Distance check of u against the non-positive integers (Gamma/psi poles).
fn guard_nonpos_integer_pole(label: &str, u: f64) -> Result<()> {
    if u < 0.5 {
        let r = u.round();
        if r <= 0.0 && (u - r).abs() < POLE_GUARD {
            return Err(Error::Pole {
                what: label.to_string(),
                at: u,
            });
        }
    }
    Ok(())
}

/// Subtracted integrand bracket R_M(r; y): Li_r(e^{-y}) minus its small-y
/// asymptotics through order y^M. Below the switch point it is the tail of
/// the expansion (numerically exact); above it the subtraction is explicit.
struct RmBracket<'a> {
    li_r: &'a LiSeries,
    r: f64,
    m_sub: usize,
    /// natural-r variant: subtract the log-corrected term instead of
    /// Gamma(1-r) y^{r-1}
    natural: bool,
    gamma_1mr: f64,
}

impl<'a> RmBracket<'a> {
    fn new(li_r: &'a LiSeries, r: f64, m_sub: usize, natural: bool) -> Self {
        let gamma_1mr = if natural {
            0.0
        } else {
            crate::specfun::gamma(1.0 - r)
        };
        RmBracket {
            li_r,
            r,
            m_sub,
            natural,
            gamma_1mr,
        }
    }

    /// R_M(y) / y^{M+1} for y below the switch point; bounded as y -> 0.
    fn tail_scaled(&self, y: f64) -> f64 {
        let mut sum = 0.0;
        let mut yp = 1.0;
        for k in (self.m_sub + 1)..self.li_r.len() {
            sum += self.li_r.coeff(k) * yp;
            yp *= y;
        }
        sum
    }

    /// R_M(y) by explicit subtraction, for y above the switch point.
    fn eval_large(&self, y: f64) -> f64 {
        let mut v = self.li_r.eval(y);
        if self.natural {
            let n = self.r as i64;
            let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let h = harmonic(n - 1).expect("r >= 1");
            v += -sign * (h - y.ln()) * y.powi((n - 1) as i32) / factorial(n - 1);
        } else {
            v -= self.gamma_1mr * y.powf(self.r - 1.0);
        }
        for k in 0..=self.m_sub {
            if self.natural && k as i64 == self.r as i64 - 1 {
                continue; // log slot (its coefficient is zero in the table)
            }
            v -= self.li_r.coeff(k) * y.powi(k as i32);
        }
        v
    }
}

/// Full integrand y^{t-1} Li_s(e^{-xy}) R_M(r; y), evaluated in scaled
/// pieces near y = 0 so nothing overflows before it cancels.
struct Integrand<'a> {
    rm: RmBracket<'a>,
    li_s: &'a LiSeries,
    s: f64,
    t: f64,
    x: f64,
    m_sub: usize,
    s_scaled: bool,
}

impl<'a> Integrand<'a> {
    fn eval(&self, y: f64) -> f64 {
        if y >= crate::specfun::Y_SWITCH {
            let li = self.li_s.eval(self.x * y);
            if li == 0.0 {
                return 0.0;
            }
            return y.powf(self.t - 1.0) * li * self.rm.eval_large(y);
        }
        let rho = self.rm.tail_scaled(y);
        let xy = self.x * y;
        if self.s_scaled && xy < crate::specfun::Y_SWITCH {
            // Li_s(e^{-xy}) = (xy)^{s-1} * [bounded]; fold the power in
            let pw = y.powf(self.t + self.m_sub as f64 + self.s - 1.0);
            pw * self.x.powf(self.s - 1.0) * rho * self.li_s.eval_small_scaled(xy)
        } else {
            y.powf(self.t + self.m_sub as f64) * rho * self.li_s.eval(xy)
        }
    }
}

/// Adaptive Gauss over [a, b] seeded with dyadically growing segments, so
/// integrands concentrated near `a` are not missed on a single wide span.
fn adaptive_segmented<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> quad::QuadResult {
    let mut cuts = vec![a];
    let mut step = 1.0f64.min((b - a) / 4.0);
    let mut p = a;
    while p + step < b {
        p += step;
        cuts.push(p);
        step *= 2.0;
    }
    cuts.push(b);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut nfev = 0;
    let per = tol / cuts.len() as f64;
    for w in cuts.windows(2) {
        let r = quad::adaptive_gauss(&mut f, w[0], w[1], per);
        total += r.value;
        err += r.err_est;
        nfev += r.nfev;
    }
    quad::QuadResult {
        value: total,
        err_est: err,
        nfev,
    }
}

fn integrate_panels(f: &Integrand<'_>, spec: &QuadratureSpec, tol: f64) -> Result<(f64, f64)> {
    let parts = spec.panels.len() - 1;
    let per = tol / parts as f64;
    let mut total = 0.0;
    let mut err = 0.0;
    for w in spec.panels.windows(2) {
        let (a, b) = (w[0], w[1]);
        let res = match spec.scheme {
            QuadScheme::DoubleExponential => {
                if a == 0.0 {
                    quad::lower_panel_log(|y| f.eval(y), b, per, 11)
                } else if b.is_infinite() {
                    quad::exp_sinh(|y| f.eval(y), a, per, 11)
                } else {
                    quad::tanh_sinh(|y| f.eval(y), a, b, per, 10)
                }
            }
            QuadScheme::AdaptiveGauss => {
                if a == 0.0 {
                    // adaptive rule in the log variable v = ln(b/y), with
                    // dyadic seed segments so the spike near v = 0 is seen
                    adaptive_segmented(
                        |v| {
                            let y = b * (-v).exp();
                            if y <= 0.0 {
                                return 0.0;
                            }
                            f.eval(y) * y
                        },
                        0.0,
                        700.0,
                        per,
                    )
                } else if b.is_infinite() {
                    let cutoff = a + 800.0 / f.x.max(1e-3);
                    adaptive_segmented(|y| f.eval(y), a, cutoff, per)
                } else {
                    quad::adaptive_gauss(|y| f.eval(y), a, b, per)
                }
            }
        };
        if !res.value.is_finite() {
            return Err(Error::Quadrature(format!(
                "panel [{a}, {b}] produced a non-finite value"
            )));
        }
        total += res.value;
        err += res.err_est;
    }
    if err > 50.0 * tol {
        return Err(Error::Quadrature(format!(
            "estimated error {err:.3e} exceeds the requested tolerance {tol:.3e}"
        )));
    }
    Ok((total, err))
}

/// Common validation and assembly shared by the two continuation routes.
fn continued_common(
    r: f64,
    s: f64,
    t: f64,
    x: f64,
    m_sub: i64,
    spec: &QuadratureSpec,
    natural: bool,
) -> Result<f64> {
    spec.validate()?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("theta_continued: x = {x} <= 0")));
    }
    if m_sub < 0 {
        return Err(Error::Domain(format!("theta_continued: M = {m_sub} < 0")));
    }
    let mf = m_sub as f64;
    // conservative extended lower bound in t; for s < 1 the Li_s small-y
    // order sharpens the integrability constraint at y = 0
    let t_integrable = if s >= 1.0 { -1.0 - mf } else { -mf - s };
    let t_min = (-mf + 1e-6).max(t_integrable + 0.05);
    if t <= t_min {
        return Err(Error::Domain(format!(
            "theta_continued: t = {t} at or below the extended bound {t_min} for M = {m_sub}"
        )));
    }
    // pole screen for the explicit terms
    for k in 0..=m_sub {
        guard_pole("zeta(t+k+s)", t, 1.0 - k as f64 - s)?;
    }
    guard_pole("zeta(t+s+r-1)", t, 2.0 - r - s)?;
    guard_nonpos_integer_pole(
        if natural {
            "psi(t+r-1)"
        } else {
            "Gamma(t+r-1)"
        },
        t + r - 1.0,
    )?;

    let li_r = LiSeries::new(r)?;
    let li_s = LiSeries::new(s)?;
    if li_r.len() <= m_sub as usize + 4 {
        return Err(Error::Domain(format!(
            "theta_continued: M = {m_sub} too large for the expansion table"
        )));
    }
    let s_rounded = s.round();
    let s_scaled = s < 1.0 && !((s - s_rounded).abs() < 1e-12 && s_rounded >= 1.0);

    let rm = RmBracket::new(&li_r, r, m_sub as usize, natural);
    let integrand = Integrand {
        rm,
        li_s: &li_s,
        s,
        t,
        x,
        m_sub: m_sub as usize,
        s_scaled,
    };

    // 1/Gamma(t) (an entire function; zero at the non-positive integers)
    let (lg_t, sg_t) = ln_gamma_signed(t);
    let inv_gamma_t = if sg_t == 0 {
        0.0
    } else {
        sg_t as f64 * (-lg_t).exp()
    };

    let quad_tol = spec.abs_tol * lg_t.exp().max(1e-2).min(1e12);
    let (integral, _qerr) = integrate_panels(&integrand, spec, quad_tol)?;
    let mut value = integral * inv_gamma_t;

    // sum over the restored subtraction terms; coeff(k) = (-1)^k zeta(r-k)/k!
    for k in 0..=m_sub {
        if natural && k == (r as i64) - 1 {
            continue;
        }
        let c = li_r.coeff(k as usize);
        if c == 0.0 {
            continue;
        }
        value += c * pochhammer(t, k) * riemann_zeta(t + k as f64 + s)? / x.powf(t + k as f64);
    }

    if natural {
        // the log-corrected block of the r-in-N route
        let rn = r as i64;
        let arg = t + s + r - 1.0;
        let inner = riemann_zeta(arg)?
            * (harmonic(rn - 1)? - digamma_any(t + r - 1.0)? + x.ln())
            - riemann_zeta_deriv(arg)?;
        let sign = if rn % 2 == 0 { 1.0 } else { -1.0 };
        value -= sign * pochhammer(t, rn - 1) * inner / (x.powf(t + r - 1.0) * factorial(rn - 1));
    } else {
        // Gamma(1-r) Gamma(t+r-1) zeta(t+s+r-1) / (x^{t+r-1} Gamma(t))
        let (la, sa) = ln_gamma_signed(t + r - 1.0);
        let (lc, sc) = ln_gamma_signed(1.0 - r);
        if sg_t != 0 && sa != 0 {
            let sign = (sa * sc * sg_t) as f64;
            value += sign
                * (lc + la - lg_t).exp()
                * riemann_zeta(t + s + r - 1.0)?
                / x.powf(t + r - 1.0);
        }
    }
    Ok(value)
}

/// Continuation of Theta(r,s,t,x) in t for r not a positive integer.
pub fn theta_continued(
    r: f64,
    s: f64,
    t: f64,
    x: f64,
    m_sub: i64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let rounded = r.round();
    if (r - rounded).abs() < 1e-9 && rounded >= 1.0 {
        return Err(Error::Domain(format!(
            "theta_continued: r = {r} is a positive integer; use theta_continued_nat"
        )));
    }
    continued_common(r, s, t, x, m_sub, spec, false)
}

/// Continuation of Theta(r,s,t,x) in t for positive integer r, using the
/// log-corrected subtraction; requires M >= r - 1.
pub fn theta_continued_nat(
    r: i64,
    s: f64,
    t: f64,
    x: f64,
    m_sub: i64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if r < 1 {
        return Err(Error::Domain(format!(
            "theta_continued_nat: r = {r} must be a positive integer"
        )));
    }
    if m_sub < r - 1 {
        return Err(Error::Domain(format!(
            "theta_continued_nat: M = {m_sub} < r - 1 = {}",
            r - 1
        )));
    }
    continued_common(r as f64, s, t, x, m_sub, spec, true)
}

/// Result of a least-squares Laurent fit.
#[derive(Debug, Clone)]
pub struct LaurentFit {
    pub series: LaurentSeries,
    /// Condition number of the column-scaled design matrix.
    pub condition: f64,
    pub residual_rms: f64,
}

const CONDITION_LIMIT: f64 = 1e8;

/// Least-squares fit of f(center + h) to sum_k c_k h^k over symmetric
/// offsets h = +-(i/npoints) radius, i = 1..npoints.
pub fn laurent_fit<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    variable: LaurentVar,
    center: f64,
    min_order: i32,
    max_order: i32,
    radius: f64,
    npoints: usize,
) -> Result<LaurentFit> {
    if !(radius > 0.0) {
        return Err(Error::Domain("laurent_fit: radius must be > 0".into()));
    }
    if max_order < min_order {
        return Err(Error::Domain("laurent_fit: max_order < min_order".into()));
    }
    let ncoef = (max_order - min_order + 1) as usize;
    if 2 * npoints < ncoef + 2 {
        return Err(Error::Domain(format!(
            "laurent_fit: {npoints} sample points cannot determine {ncoef} orders"
        )));
    }
    let rows = 2 * npoints;
    let mut a = DMatrix::<f64>::zeros(rows, ncoef);
    let mut b = DVector::<f64>::zeros(rows);
    let mut row = 0;
    for i in 1..=npoints {
        for sgn in [1.0, -1.0] {
            let h = sgn * radius * i as f64 / npoints as f64;
            for (j, k) in (min_order..=max_order).enumerate() {
                a[(row, j)] = h.powi(k);
            }
            b[row] = f(center + h)?;
            row += 1;
        }
    }
    // scale columns to unit maximum so the condition number reflects the
    // geometry of the sample set rather than raw power magnitudes
    let mut scales = vec![0.0f64; ncoef];
    for j in 0..ncoef {
        let m = (0..rows).map(|i| a[(i, j)].abs()).fold(0.0, f64::max);
        scales[j] = if m > 0.0 { m } else { 1.0 };
        for i in 0..rows {
            a[(i, j)] /= scales[j];
        }
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            cond: condition,
            limit: CONDITION_LIMIT,
        });
    }
    let mut sol = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::Quadrature(format!("laurent_fit SVD solve: {e}")))?;
    // one round of iterative refinement recovers the digits the scaled
    // normal geometry loses
    let r = &b - &a * &sol;
    if let Ok(dx) = svd.solve(&r, 0.0) {
        sol += dx;
    }
    let resid = (&a * &sol - &b).norm() / (rows as f64).sqrt();
    let coefficients: Vec<f64> = (0..ncoef).map(|j| sol[j] / scales[j]).collect();
    Ok(LaurentFit {
        series: LaurentSeries::new(variable, center, min_order, coefficients)?,
        condition,
        residual_rms: resid,
    })
}

/// Residue of a simple pole by Richardson extrapolation of
/// h (f(c+h) - f(c-h)) / 2, an even function of h.
pub fn residue_extrapolate<F: FnMut(f64) -> Result<f64>>(mut f: F, center: f64) -> Result<f64> {
    let h0 = 0.08;
    let mut a = [0.0f64; 3];
    for (lvl, slot) in a.iter_mut().enumerate() {
        let h = h0 / 2.0f64.powi(lvl as i32);
        *slot = 0.5 * h * (f(center + h)? - f(center - h)?);
    }
    let r1 = (4.0 * a[1] - a[0]) / 3.0;
    let r2 = (4.0 * a[2] - a[1]) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}
