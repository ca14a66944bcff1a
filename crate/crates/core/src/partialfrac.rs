//! Exact-rational verification of the partial fraction
//!     1/(n^r (n+y)^t) = (-1)^r sum_{j=0}^{t-1} C(j+r-1, j) / (y^{j+r} (n+y)^{t-j})
//!                      + sum_{i=0}^{r-1} (-1)^i C(i+t-1, i) / (n^{r-i} y^{t+i}),
//! the combinatorial engine behind the series evaluation of Theta. The
//! polynomial check clears denominators and verifies, in arbitrary-size
//! integer arithmetic, that every mixed n-power cancels identically.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::specfun::binom_ext;
use crate::theta::IdentityReport;

/// One term 1/(y^{j+r} (n+y)^{t-j}) with its signed integer coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PfJTerm {
    pub j: i64,
    pub coefficient: i64,
    pub y_power: i64,
    pub shifted_power: i64,
}

/// One term 1/(n^{r-i} y^{t+i}) with its signed integer coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PfITerm {
    pub i: i64,
    pub coefficient: i64,
    pub n_power: i64,
    pub y_power: i64,
}

/// Coefficient table of the decomposition for fixed (r, t).
#[derive(Debug, Clone)]
pub struct PFTable {
    pub r: i64,
    pub t: i64,
    pub j_terms: Vec<PfJTerm>,
    pub i_terms: Vec<PfITerm>,
}

fn require_valid(r: i64, t: i64) -> Result<()> {
    if r < 0 || t < 0 || r + t < 1 {
        return Err(Error::Domain(format!(
            "partial fraction: need r, t >= 0 with r + t >= 1, got ({r}, {t})"
        )));
    }
    Ok(())
}

/// Build the decomposition table for 1/(n^r (n+y)^t).
pub fn pf_decompose(r: i64, t: i64) -> Result<PFTable> {
    require_valid(r, t)?;
    let sign_r = if r % 2 == 0 { 1 } else { -1 };
    let j_terms = (0..t)
        .map(|j| PfJTerm {
            j,
            coefficient: sign_r * binom_ext(j + r - 1, j),
            y_power: j + r,
            shifted_power: t - j,
        })
        .collect();
    let i_terms = (0..r)
        .map(|i| PfITerm {
            i,
            coefficient: if i % 2 == 0 { 1 } else { -1 } * binom_ext(i + t - 1, i),
            n_power: r - i,
            y_power: t + i,
        })
        .collect();
    Ok(PFTable {
        r,
        t,
        j_terms,
        i_terms,
    })
}

impl PFTable {
    /// Evaluate the right-hand side of the decomposition at (n, y).
    pub fn eval(&self, n: f64, y: f64) -> f64 {
        self.eval_scaled(n, y).0
    }

    /// Value together with the largest term magnitude, which sets the
    /// cancellation floor of the evaluation.
    pub fn eval_scaled(&self, n: f64, y: f64) -> (f64, f64) {
        let mut acc = 0.0;
        let mut scale = 0.0f64;
        for term in &self.j_terms {
            let v = term.coefficient as f64
                / (y.powi(term.y_power as i32) * (n + y).powi(term.shifted_power as i32));
            acc += v;
            scale = scale.max(v.abs());
        }
        for term in &self.i_terms {
            let v = term.coefficient as f64
                / (n.powi(term.n_power as i32) * y.powi(term.y_power as i32));
            acc += v;
            scale = scale.max(v.abs());
        }
        (acc, scale)
    }
}

/// Dense bivariate polynomial with BigInt coefficients, indexed by
/// (n-degree, y-degree).
#[derive(Debug, Clone)]
struct Poly2 {
    /// coeff[a][b] multiplies n^a y^b
    coeff: Vec<Vec<BigInt>>,
}

impl Poly2 {
    fn zero(dn: usize, dy: usize) -> Self {
        Poly2 {
            coeff: vec![vec![BigInt::zero(); dy + 1]; dn + 1],
        }
    }

    fn add_term(&mut self, a: usize, b: usize, c: BigInt) {
        self.coeff[a][b] += c;
    }
}

/// (n + y)^p as a Poly2 via the binomial theorem.
fn binomial_power(p: usize, dn: usize, dy: usize) -> Poly2 {
    let mut out = Poly2::zero(dn, dy);
    for c in 0..=p {
        out.add_term(c, p - c, BigInt::from(binom_ext(p as i64, c as i64)));
    }
    out
}

/// Exact check that the cleared-denominator polynomial
///     A(n, y) = (-1)^r n^r sum_j C(j+r-1,j) y^{t-j} (n+y)^j
///             + (n+y)^t sum_i C(i+t-1,i) (-1)^i n^i y^{r-i}
/// equals y^{r+t} identically, i.e. that every n-coefficient of degree
/// 1..r+t-1 vanishes.
pub fn pf_verify_polynomial(r: i64, t: i64) -> Result<bool> {
    require_valid(r, t)?;
    let (ru, tu) = (r as usize, t as usize);
    let deg = ru + tu;
    let mut a = Poly2::zero(deg, deg);

    let sign_r = if r % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    for j in 0..tu {
        let c = &sign_r * BigInt::from(binom_ext(j as i64 + r - 1, j as i64));
        let pw = binomial_power(j, deg, deg);
        // n^r * y^{t-j} * (n+y)^j
        for (an, row) in pw.coeff.iter().enumerate() {
            for (ay, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    a.add_term(an + ru, ay + tu - j, &c * v);
                }
            }
        }
    }
    let shift = binomial_power(tu, deg, deg);
    for i in 0..ru {
        let sign_i = if i % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let c = sign_i * BigInt::from(binom_ext(i as i64 + t - 1, i as i64));
        // (n+y)^t * n^i * y^{r-i}
        for (an, row) in shift.coeff.iter().enumerate() {
            for (ay, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    a.add_term(an + i, ay + ru - i, &c * v);
                }
            }
        }
    }

    // expect exactly y^{r+t}
    for (an, row) in a.coeff.iter().enumerate() {
        for (ay, v) in row.iter().enumerate() {
            let expected_one = an == 0 && ay == deg;
            if expected_one {
                if v != &BigInt::one() {
                    return Ok(false);
                }
            } else if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Floating-point residual of the decomposition at a single (n, y).
pub fn pf_numeric_check(r: i64, t: i64, n: f64, y: f64) -> Result<IdentityReport> {
    require_valid(r, t)?;
    if !(n > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "pf_numeric_check: need n, y > 0, got ({n}, {y})"
        )));
    }
    let lhs = 1.0 / (n.powi(r as i32) * (n + y).powi(t as i32));
    let (rhs, scale) = pf_decompose(r, t)?.eval_scaled(n, y);
    // residual is relative to the largest term: cancellation between the
    // big terms bounds what double precision can resolve
    let tol = 1e-12 * scale.max(lhs.abs()).max(1e-300);
    Ok(IdentityReport::new(
        &format!("partial_fraction({r},{t})"),
        lhs,
        rhs,
        tol,
        "exact-table",
    ))
}

/// Exact rational binomial for the identity lemmas below.
fn big_binom(a: i64, b: i64) -> BigInt {
    BigInt::from(binom_ext(a, b))
}

/// Falling-factorial ratio (d+t-1)!/(d+t-a)! as an exact integer product
/// (the degree-(a-1) polynomial p(d) of the vanishing-sum lemma).
fn poly_p(d: i64, t: i64, a: i64) -> BigInt {
    let mut acc = BigInt::one();
    // product over d+t-a+1 ..= d+t-1  (a-1 consecutive integers)
    for v in (d + t - a + 1)..=(d + t - 1) {
        acc *= BigInt::from(v);
    }
    acc
}

/// sum_{d=0}^{a} (-1)^d C(a,d) p(d) = 0 for the degree-(a-1) polynomial p.
pub fn alternating_binomial_moment(t: i64, a: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for d in 0..=a {
        let sign = if d % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        acc += sign * big_binom(a, d) * poly_p(d, t, a);
    }
    acc
}

/// A1 + A2 for the mixed-coefficient cancellation: the two halves of the
/// coefficient of n^a (r <= a <= r+t-1) in the cleared polynomial.
pub fn a1_plus_a2(r: i64, t: i64, a: i64) -> BigRational {
    let sign_r = if r % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut a1 = BigInt::zero();
    for j in (a - r)..=(t - 1) {
        a1 += big_binom(j + r - 1, j) * big_binom(j, a - r);
    }
    let mut a2 = BigInt::zero();
    for i in 0..=(r - 1) {
        let sign_i = if i % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        a2 += sign_i * big_binom(i + t - 1, i) * big_binom(t, a - i);
    }
    BigRational::from_integer(sign_r * a1 + a2)
}

/// The closed form of sum_j (-1)^j C(t,j) (j+a-1)!/(j+a-t)!; both sides are
/// evaluated exactly so the computer-algebra step in the derivation is
/// certified rather than trusted.
pub fn closed_sum_identity_holds(r: i64, t: i64, a: i64) -> bool {
    // lhs: sum_{j=0}^{r+t-a-1} (-1)^j C(t,j) (j+a-1)!/(j+a-t)!
    let mut lhs = BigRational::zero();
    for j in 0..=(r + t - a - 1) {
        let sign = if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        lhs += BigRational::from_integer(sign * big_binom(t, j) * poly_p(j + a - t, t, t));
    }
    // rhs: (-1)^{a+r+t} (a-r-t)/(a t (r-1)!) C(t, r+t-a) (r+t-1)!
    let sign = if (a + r + t) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut fact_r1 = BigInt::one();
    for v in 2..r {
        fact_r1 *= BigInt::from(v);
    }
    let mut fact_rt1 = BigInt::one();
    for v in 2..(r + t) {
        fact_rt1 *= BigInt::from(v);
    }
    let num = sign * BigInt::from(a - r - t) * big_binom(t, r + t - a) * fact_rt1;
    let den = BigInt::from(a) * BigInt::from(t) * fact_r1;
    let rhs = BigRational::new(num, den);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_classical_split() {
        // (1,1): 1/(n(n+y)) = 1/(ny) - 1/(y(n+y))
        let t = pf_decompose(1, 1).unwrap();
        assert_eq!(t.j_terms.len(), 1);
        assert_eq!(t.i_terms.len(), 1);
        assert_eq!(t.j_terms[0].coefficient, -1);
        assert_eq!(t.i_terms[0].coefficient, 1);
        // (0,1): single term with C(-1,0) = 1
        let t = pf_decompose(0, 1).unwrap();
        assert_eq!(t.j_terms.len(), 1);
        assert_eq!(t.i_terms.len(), 0);
        assert_eq!(t.j_terms[0].coefficient, 1);
        assert!(pf_decompose(0, 0).is_err());
    }

    #[test]
    fn decompose_r2_t1_values() {
        // (2,1): {j=0: +1/(y^2 (n+y))} + {i=0: 1/(n^2 y), i=1: -1/(n y^2)}
        let t = pf_decompose(2, 1).unwrap();
        assert_eq!(t.j_terms[0].coefficient, 1);
        assert_eq!(t.i_terms[0].coefficient, 1);
        assert_eq!(t.i_terms[1].coefficient, -1);
        // numeric check at n = y = 1: 1/2 = 1/2 + 1 - 1
        let v = t.eval(1.0, 1.0);
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn polynomial_verification_small() {
        assert!(pf_verify_polynomial(3, 4).unwrap());
        assert!(pf_verify_polynomial(0, 1).unwrap());
        assert!(pf_verify_polynomial(1, 0).unwrap());
        assert!(pf_verify_polynomial(5, 5).unwrap());
    }

    #[test]
    fn polynomial_verification_grid() {
        for r in 0..=8i64 {
            for t in 0..=8i64 {
                if r + t < 1 {
                    continue;
                }
                assert!(
                    pf_verify_polynomial(r, t).unwrap(),
                    "identity fails at ({r},{t})"
                );
            }
        }
    }

    #[test]
    fn numeric_residuals() {
        let rep = pf_numeric_check(2, 3, 1.5, 0.7).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
        let rep = pf_numeric_check(1, 1, 1.0, 1.0).unwrap();
        assert_eq!(rep.residual, 0.0);
        let rep = pf_numeric_check(4, 2, 10.0, 0.01).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn vanishing_moment_lemma() {
        for a in 1..=6i64 {
            for t in 1..=8i64 {
                assert!(
                    alternating_binomial_moment(t, a).is_zero(),
                    "moment lemma fails at t={t}, a={a}"
                );
            }
        }
    }

    #[test]
    fn a1_a2_cancellation() {
        for r in 1..=9i64 {
            for t in 1..=9i64 {
                if r + t > 10 {
                    continue;
                }
                for a in r..=(r + t - 1) {
                    assert!(
                        a1_plus_a2(r, t, a).is_zero(),
                        "A1 + A2 != 0 at r={r}, t={t}, a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn certified_closed_sum() {
        for r in 1..=9i64 {
            for t in 1..=9i64 {
                if r + t > 10 {
                    continue;
                }
                for a in r..=(r + t - 1) {
                    assert!(
                        closed_sum_identity_holds(r, t, a),
                        "closed-sum identity fails at r={r}, t={t}, a={a}"
                    );
                }
            }
        }
    }
}
