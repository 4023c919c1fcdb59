//! Laurent coefficients of functions given in canonical product form
//!
//! `C z^j exp(A z + A0/z) * prod(1 + z/b) / prod(1 - z/d)
//!   * prod(1 + 1/(z b')) / prod(1 - 1/(z d'))`.

use num_traits::{One, Signed, Zero};

use super::{LaurentWindow, Tail};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// Finite description of a function in canonical product form.
///
/// `pos_*` factors are in `z`, `neg_*` factors in `1/z`. `zero_at_origin`
/// contributes one extra factor `z` (the degenerate zero at the origin).
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSpec {
    pub c: Rational,
    pub j: i64,
    pub a: Rational,
    pub a0: Rational,
    pub pos_zeros: Vec<Rational>,
    pub pos_poles: Vec<Rational>,
    pub neg_zeros: Vec<Rational>,
    pub neg_poles: Vec<Rational>,
    pub zero_at_origin: bool,
}

impl FactorSpec {
    pub fn constant(c: Rational) -> Self {
        FactorSpec {
            c,
            j: 0,
            a: Rational::zero(),
            a0: Rational::zero(),
            pos_zeros: Vec::new(),
            pos_poles: Vec::new(),
            neg_zeros: Vec::new(),
            neg_poles: Vec::new(),
            zero_at_origin: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.c.is_positive() {
            return Err(Error::Domain(format!("C must be positive, got {}", self.c)));
        }
        if self.a.is_negative() || self.a0.is_negative() {
            return Err(Error::Domain("exponential rates A, A0 must be nonnegative".into()));
        }
        let lists = [
            ("pos_zeros", &self.pos_zeros),
            ("pos_poles", &self.pos_poles),
            ("neg_zeros", &self.neg_zeros),
            ("neg_poles", &self.neg_poles),
        ];
        for (name, list) in lists {
            if let Some(bad) = list.iter().find(|x| !x.is_positive()) {
                return Err(Error::Domain(format!("{name} entries must be positive, got {bad}")));
            }
        }
        Ok(())
    }

    /// Total power of `z` in front of the products.
    pub fn shift(&self) -> i64 {
        self.j + i64::from(self.zero_at_origin)
    }

    fn pos_side(&self) -> Side<'_> {
        Side {
            rate: &self.a,
            zeros: &self.pos_zeros,
            poles: &self.pos_poles,
        }
    }

    fn neg_side(&self) -> Side<'_> {
        Side {
            rate: &self.a0,
            zeros: &self.neg_zeros,
            poles: &self.neg_poles,
        }
    }

    /// Value at a positive real point (all factors are positive there when
    /// the point lies in the annulus of convergence).
    fn eval_f64(&self, x: f64) -> f64 {
        to_f64(&self.c) * x.powi(self.shift() as i32) * self.pos_side().eval_f64(x) * self.neg_side().eval_f64(1.0 / x)
    }

    /// `(inner, outer)` radii of the annulus where the products converge.
    pub fn annulus(&self) -> (f64, f64) {
        let inner = self.neg_side().radius().map_or(0.0, |r| 1.0 / r);
        let outer = self.pos_side().radius().unwrap_or(f64::INFINITY);
        (inner, outer)
    }
}

// One side of the product: exp(rate * w) prod(1 + w/zero) / prod(1 - w/pole).
struct Side<'a> {
    rate: &'a Rational,
    zeros: &'a [Rational],
    poles: &'a [Rational],
}

impl Side<'_> {
    fn is_polynomial(&self) -> bool {
        self.rate.is_zero() && self.poles.is_empty()
    }

    fn radius(&self) -> Option<f64> {
        self.poles.iter().map(to_f64).reduce(f64::min)
    }

    fn eval_f64(&self, w: f64) -> f64 {
        let mut v = (to_f64(self.rate) * w).exp();
        for z in self.zeros {
            v *= 1.0 + w / to_f64(z);
        }
        for p in self.poles {
            v /= 1.0 - w / to_f64(p);
        }
        v
    }

    /// First `len` power-series coefficients, exactly.
    fn coefficients(&self, len: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); len];
        if len == 0 {
            return c;
        }
        c[0] = Rational::one();
        for b in self.zeros {
            for k in (1..len).rev() {
                let prev = &c[k - 1] / b;
                c[k] += prev;
            }
        }
        for d in self.poles {
            for k in 1..len {
                let prev = &c[k - 1] / d;
                c[k] += prev;
            }
        }
        if !self.rate.is_zero() {
            let mut e = Vec::with_capacity(len);
            let mut term = Rational::one();
            for k in 0..len {
                e.push(term.clone());
                term = term * self.rate / Rational::from_integer((k as i64 + 1).into());
            }
            c = (0..len).map(|n| (0..=n).map(|k| &c[k] * &e[n - k]).sum()).collect();
        }
        c
    }
}

/// Laurent coefficients of `spec` on `[out_lo, out_hi]`.
///
/// The result is exact when one side of the product is a polynomial (no
/// poles, no exponential factor): every coefficient is then a finite sum.
/// Otherwise the sum over the `1/z` side is cut after `exp_truncation + 1`
/// terms and `tail_bound` carries a Cauchy-estimate bound on what was dropped.
pub fn generate_product_form(
    spec: &FactorSpec,
    out_lo: i64,
    out_hi: i64,
    exp_truncation: usize,
) -> Result<LaurentWindow> {
    spec.validate()?;
    if out_lo > out_hi {
        return Err(Error::Range(format!("empty output range [{out_lo}, {out_hi}]")));
    }
    if exp_truncation == 0 {
        return Err(Error::Domain("exp_truncation must be positive".into()));
    }
    let shift = spec.shift();
    let (nlo, nhi) = (out_lo - shift, out_hi - shift);
    let pos = spec.pos_side();
    let neg = spec.neg_side();
    let (inner, outer) = spec.annulus();
    if inner >= outer {
        return Err(Error::Domain(format!(
            "empty annulus of convergence ({inner} >= {outer})"
        )));
    }

    // f_n = C * sum_{m >= 0} N_m P_{n+m}
    let (m_max, exact) = if neg.is_polynomial() {
        (neg.zeros.len() as i64, true)
    } else if pos.is_polynomial() {
        ((pos.zeros.len() as i64 - nlo).max(0), true)
    } else {
        (exp_truncation as i64, false)
    };
    let p_len = (nhi + m_max + 1).max(0) as usize;
    let p_coef = pos.coefficients(p_len);
    let n_coef = neg.coefficients(m_max as usize + 1);
    let coeffs: Vec<Rational> = (nlo..=nhi)
        .map(|n| {
            let s: Rational = (0..=m_max)
                .filter(|m| n + m >= 0)
                .map(|m| &n_coef[m as usize] * &p_coef[(n + m) as usize])
                .sum();
            &spec.c * s
        })
        .collect();

    let below = if neg.is_polynomial() && nlo <= -(neg.zeros.len() as i64) {
        Tail::Zero
    } else {
        cauchy_tail(spec, out_lo, true)
    };
    let above = if pos.is_polynomial() && nhi >= pos.zeros.len() as i64 {
        Tail::Zero
    } else {
        cauchy_tail(spec, out_hi, false)
    };

    let window = if exact {
        LaurentWindow::exact(out_lo, coeffs)
    } else {
        let bound = truncation_bound(spec, nlo, nhi, exp_truncation)?;
        LaurentWindow::approx(out_lo, coeffs, bound)
    };
    Ok(window.with_tails(below, above))
}

// Candidate evaluation radii strictly inside (0, limit).
fn radii(limit: Option<f64>) -> Vec<f64> {
    match limit {
        Some(r) => [0.25, 0.5, 0.75, 0.9, 0.97].iter().map(|t| t * r).collect(),
        None => [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0].to_vec(),
    }
}

// Nonnegative coefficients give f_k <= f(rho) / rho^k for any rho in the
// annulus; a radius below (above) 1 turns that into a geometric lower (upper)
// tail.
fn cauchy_tail(spec: &FactorSpec, edge: i64, lower: bool) -> Tail {
    let (inner, outer) = spec.annulus();
    let mut best: Option<(f64, f64)> = None;
    let candidates: Vec<f64> = if outer.is_finite() {
        radii(Some(outer - inner)).into_iter().map(|t| inner + t).collect()
    } else {
        radii(None).into_iter().map(|t| inner + t).collect()
    };
    for rho in candidates {
        let ratio = if lower { rho } else { 1.0 / rho };
        if !(ratio < 1.0) || rho <= inner || rho >= outer {
            continue;
        }
        let bound = spec.eval_f64(rho) * rho.powf(-(edge as f64));
        if !bound.is_finite() {
            continue;
        }
        let total = bound * ratio / (1.0 - ratio);
        if best.is_none_or(|(b, r)| total < b * r / (1.0 - r)) {
            best = Some((bound, ratio));
        }
    }
    match best {
        Some((bound, ratio)) => Tail::Geometric { bound, ratio },
        None => Tail::Unknown,
    }
}

// Bound on C * sum_{m > K} N_m P_{n+m} over n in [nlo, nhi], using
// P_k <= P(rho) rho^{-k} and N_m <= N(sigma) sigma^{-m} with rho * sigma > 1.
fn truncation_bound(spec: &FactorSpec, nlo: i64, nhi: i64, k: usize) -> Result<f64> {
    let pos = spec.pos_side();
    let neg = spec.neg_side();
    let mut best = f64::INFINITY;
    for rho in radii(pos.radius()) {
        for sigma in radii(neg.radius()) {
            let prod = rho * sigma;
            if prod <= 1.0 {
                continue;
            }
            let worst_n = if rho >= 1.0 { nlo } else { nhi };
            let b = to_f64(&spec.c)
                * pos.eval_f64(rho)
                * neg.eval_f64(sigma)
                * rho.powf(-(worst_n as f64))
                * prod.powf(-((k + 1) as f64))
                / (1.0 - 1.0 / prod);
            if b.is_finite() && b < best {
                best = b;
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Domain(
            "cannot bound the truncation error: annulus of convergence is too thin".into(),
        ))
    }
}
