//! Finite windows of Laurent coefficients and the arithmetic the matrix
//! builders need on them.
//!
//! A [`LaurentWindow`] stores `f_lo, ..., f_hi` of some (possibly doubly
//! infinite) series. Besides the stored values it records what is known about
//! the coefficients on either side of the window ([`Tail`]): a window built
//! from an explicit Laurent polynomial knows they vanish, a window cut out of
//! a product with poles only knows a geometric bound, and a bare slice knows
//! nothing. Nothing outside the stored range is ever read as zero unless the
//! matching tail says so.

mod product;
mod ratios;

pub use product::{generate_product_form, FactorSpec};
pub use ratios::{ratio_profile, RatioProfile, RatioValue};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// What is known about the coefficients on one side of a window.
#[derive(Debug, Clone, PartialEq)]
pub enum Tail {
    /// Every coefficient past the edge is zero.
    Zero,
    /// `|f_{edge±m}| <= bound * ratio^m` for all `m >= 1`, with `0 <= ratio < 1`.
    Geometric {
        bound: f64,
        ratio: f64,
    },
    Unknown,
}

impl Tail {
    fn sup(&self) -> Option<f64> {
        match self {
            Tail::Zero => Some(0.0),
            Tail::Geometric { bound, ratio } => Some(bound * ratio),
            Tail::Unknown => None,
        }
    }

    fn sum(&self) -> Option<f64> {
        match self {
            Tail::Zero => Some(0.0),
            Tail::Geometric { bound, ratio } => Some(bound * ratio / (1.0 - ratio)),
            Tail::Unknown => None,
        }
    }

    /// Bound on the coefficient `m >= 1` steps past the edge.
    fn at(&self, m: i64) -> Option<f64> {
        match self {
            Tail::Zero => Some(0.0),
            Tail::Geometric { bound, ratio } => Some(bound * ratio.powi(m as i32)),
            Tail::Unknown => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Tail::Zero)
    }
}

/// Coefficients `f_lo..=f_hi` of a Laurent series.
///
/// When `exact` is false, `tail_bound` bounds the absolute error of every
/// stored coefficient. A window may be empty (`hi == lo - 1`); that only
/// arises from splitting a window shorter than the split factor.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentWindow {
    lo: i64,
    coeffs: Vec<Rational>,
    exact: bool,
    tail_bound: Option<f64>,
    below: Tail,
    above: Tail,
}

impl LaurentWindow {
    /// Exact slice of a series about whose other coefficients nothing is known.
    pub fn exact(lo: i64, coeffs: Vec<Rational>) -> Self {
        LaurentWindow {
            lo,
            coeffs,
            exact: true,
            tail_bound: None,
            below: Tail::Unknown,
            above: Tail::Unknown,
        }
    }

    /// A Laurent polynomial: the window holds its whole support.
    pub fn polynomial(lo: i64, coeffs: Vec<Rational>) -> Self {
        LaurentWindow {
            below: Tail::Zero,
            above: Tail::Zero,
            ..Self::exact(lo, coeffs)
        }
    }

    pub fn from_ints(lo: i64, coeffs: &[i64]) -> Self {
        Self::polynomial(lo, coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    /// Approximate coefficients, each within `tail_bound` of the true value.
    pub fn approx(lo: i64, coeffs: Vec<Rational>, tail_bound: f64) -> Self {
        LaurentWindow {
            exact: false,
            tail_bound: Some(tail_bound),
            ..Self::exact(lo, coeffs)
        }
    }

    pub fn with_tails(mut self, below: Tail, above: Tail) -> Self {
        self.below = below;
        self.above = above;
        self
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn tail_bound(&self) -> Option<f64> {
        self.tail_bound
    }

    pub fn below(&self) -> &Tail {
        &self.below
    }

    pub fn above(&self) -> &Tail {
        &self.above
    }

    /// True when both tails are known to vanish.
    pub fn has_finite_support(&self) -> bool {
        self.below.is_zero() && self.above.is_zero()
    }

    pub fn coeff(&self, k: i64) -> Option<&Rational> {
        if k < self.lo {
            return None;
        }
        self.coeffs.get((k - self.lo) as usize)
    }

    /// Stored coefficient at `k`, or an outside-window error.
    pub fn get(&self, k: i64) -> Result<&Rational> {
        self.coeff(k).ok_or(Error::OutsideWindow {
            index: k,
            lo: self.lo,
            hi: self.hi(),
        })
    }

    /// Coefficient at `k`, reading declared-zero tails as zero.
    pub fn value_at(&self, k: i64) -> Result<Rational> {
        if let Some(c) = self.coeff(k) {
            return Ok(c.clone());
        }
        let tail = if k < self.lo { &self.below } else { &self.above };
        if tail.is_zero() {
            Ok(Rational::zero())
        } else {
            Err(Error::OutsideWindow {
                index: k,
                lo: self.lo,
                hi: self.hi(),
            })
        }
    }

    /// Widens the window to at least `[lo, hi]` by writing out zeros.
    ///
    /// Only allowed on sides whose tail is declared zero.
    pub fn padded(&self, lo: i64, hi: i64) -> Result<LaurentWindow> {
        let new_lo = lo.min(self.lo);
        let new_hi = hi.max(self.hi());
        if new_lo < self.lo && !self.below.is_zero() {
            return Err(Error::InsufficientData(format!(
                "cannot pad below index {}: lower tail is not known to vanish",
                self.lo
            )));
        }
        if new_hi > self.hi() && !self.above.is_zero() {
            return Err(Error::InsufficientData(format!(
                "cannot pad above index {}: upper tail is not known to vanish",
                self.hi()
            )));
        }
        let coeffs = (new_lo..=new_hi)
            .map(|k| self.value_at(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentWindow {
            lo: new_lo,
            coeffs,
            ..self.clone()
        })
    }

    /// Restriction to `[lo, hi]` (intersected with the stored range).
    pub fn restricted(&self, lo: i64, hi: i64) -> LaurentWindow {
        let new_lo = lo.max(self.lo);
        let new_hi = hi.min(self.hi());
        let coeffs: Vec<Rational> = (new_lo..=new_hi).filter_map(|k| self.coeff(k).cloned()).collect();
        let below = self.tail_after_cut(true, new_lo);
        let above = self.tail_after_cut(false, new_hi);
        LaurentWindow {
            lo: new_lo,
            coeffs,
            below,
            above,
            ..self.clone()
        }
    }

    // Tail on one side after cutting the window at `edge`.
    fn tail_after_cut(&self, lower: bool, edge: i64) -> Tail {
        let (tail, cut_all_zero) = if lower {
            (
                &self.below,
                (self.lo..edge).all(|k| self.coeff(k).is_none_or(|c| c.is_zero())),
            )
        } else {
            (
                &self.above,
                (edge + 1..=self.hi()).all(|k| self.coeff(k).is_none_or(|c| c.is_zero())),
            )
        };
        if tail.is_zero() && cut_all_zero {
            Tail::Zero
        } else {
            Tail::Unknown
        }
    }

    /// Upper bound on `|f_j|` over all `j < limit` (including the lower tail).
    fn sup_below(&self, limit: i64) -> Option<f64> {
        let mut s = self.below.sup()?;
        for k in self.lo..limit.min(self.hi() + 1) {
            s = s.max(to_f64(&self.coeffs[(k - self.lo) as usize].abs()));
        }
        if limit > self.hi() + 1 {
            s = s.max(self.above.sup()?);
        }
        Some(s)
    }

    /// Upper bound on `|f_j|` over all `j > limit` (including the upper tail).
    fn sup_above(&self, limit: i64) -> Option<f64> {
        let mut s = self.above.sup()?;
        for k in (limit + 1).max(self.lo)..=self.hi() {
            s = s.max(to_f64(&self.coeffs[(k - self.lo) as usize].abs()));
        }
        if limit < self.lo - 1 {
            s = s.max(self.below.sup()?);
        }
        Some(s)
    }

    /// Bound on `|f_j|` for `j` outside the stored range.
    fn outside_bound(&self, j: i64) -> Option<f64> {
        if j > self.hi() {
            self.above.at(j - self.hi())
        } else {
            self.below.at(self.lo - j)
        }
    }

    /// Dense `f64` copy of the stored coefficients (ascending).
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

/// `alpha * u + beta * v` on the intersection of the two index ranges.
pub fn window_add(u: &LaurentWindow, v: &LaurentWindow, alpha: &Rational, beta: &Rational) -> Result<LaurentWindow> {
    let lo = u.lo.max(v.lo);
    let hi = u.hi().min(v.hi());
    if lo > hi {
        return Err(Error::Range(format!(
            "windows [{}, {}] and [{}, {}] do not overlap",
            u.lo,
            u.hi(),
            v.lo,
            v.hi()
        )));
    }
    let coeffs = (lo..=hi)
        .map(|k| alpha * &u.coeffs[(k - u.lo) as usize] + beta * &v.coeffs[(k - v.lo) as usize])
        .collect();
    let ur = u.restricted(lo, hi);
    let vr = v.restricted(lo, hi);
    let below = if ur.below.is_zero() && vr.below.is_zero() {
        Tail::Zero
    } else {
        Tail::Unknown
    };
    let above = if ur.above.is_zero() && vr.above.is_zero() {
        Tail::Zero
    } else {
        Tail::Unknown
    };
    let exact = u.exact && v.exact;
    let tail_bound = if exact {
        None
    } else {
        Some(to_f64(&alpha.abs()) * u.tail_bound.unwrap_or(0.0) + to_f64(&beta.abs()) * v.tail_bound.unwrap_or(0.0))
    };
    Ok(LaurentWindow {
        lo,
        coeffs,
        exact,
        tail_bound,
        below,
        above,
    })
}

/// Multiplication by `z`: every coefficient moves up one index.
pub fn window_shift(u: &LaurentWindow) -> LaurentWindow {
    LaurentWindow {
        lo: u.lo + 1,
        ..u.clone()
    }
}

/// Cauchy product `u * v` on `[out_lo, out_hi]`.
///
/// Terms involving coefficients outside the stored windows are resolved
/// through the tails: zero tails drop out, geometric tails contribute to
/// `tail_bound`, unknown tails make the request fail.
pub fn window_mul(u: &LaurentWindow, v: &LaurentWindow, out_lo: i64, out_hi: i64) -> Result<LaurentWindow> {
    if out_lo > out_hi {
        return Err(Error::Range(format!("empty output range [{out_lo}, {out_hi}]")));
    }
    let eu = u.tail_bound.unwrap_or(0.0);
    let ev = v.tail_bound.unwrap_or(0.0);
    let mut worst = 0.0f64;
    let mut coeffs = Vec::with_capacity((out_hi - out_lo + 1) as usize);
    for n in out_lo..=out_hi {
        let mut acc = Rational::zero();
        let mut err = 0.0f64;
        for k in u.lo..=u.hi() {
            let uk = &u.coeffs[(k - u.lo) as usize];
            if let Some(vj) = v.coeff(n - k) {
                acc += uk * vj;
                err += to_f64(&uk.abs()) * ev + to_f64(&vj.abs()) * eu + eu * ev;
            } else if !uk.is_zero() || eu > 0.0 {
                let b = v.outside_bound(n - k).ok_or_else(|| missing(n, n - k, "second"))?;
                err += (to_f64(&uk.abs()) + eu) * b;
            }
        }
        // k above u's window pairs with v_j for j < n - u.hi
        if !u.above.is_zero() {
            let s = u.above.sum().ok_or_else(|| missing(n, u.hi() + 1, "first"))?;
            let sup = v
                .sup_below(n - u.hi())
                .ok_or_else(|| missing(n, n - u.hi() - 1, "second"))?;
            err += s * sup;
        }
        if !u.below.is_zero() {
            let s = u.below.sum().ok_or_else(|| missing(n, u.lo - 1, "first"))?;
            let sup = v
                .sup_above(n - u.lo)
                .ok_or_else(|| missing(n, n - u.lo + 1, "second"))?;
            err += s * sup;
        }
        worst = worst.max(err);
        coeffs.push(acc);
    }
    let exact = u.exact && v.exact && worst == 0.0;
    let support_lo = u.lo + v.lo;
    let support_hi = u.hi() + v.hi();
    let finite = u.has_finite_support() && v.has_finite_support();
    let below = if finite && out_lo <= support_lo {
        Tail::Zero
    } else {
        Tail::Unknown
    };
    let above = if finite && out_hi >= support_hi {
        Tail::Zero
    } else {
        Tail::Unknown
    };
    Ok(LaurentWindow {
        lo: out_lo,
        coeffs,
        exact,
        tail_bound: if exact { None } else { Some(worst) },
        below,
        above,
    })
}

fn missing(n: i64, idx: i64, which: &str) -> Error {
    Error::InsufficientData(format!(
        "coefficient {n} of the product needs index {idx} of the {which} factor, \
         which lies outside its window with no decay declaration"
    ))
}

/// `f(z) = q(z^2) + z p(z^2)`; returns `(p, q)`.
pub fn split_even_odd(f: &LaurentWindow) -> (LaurentWindow, LaurentWindow) {
    let mut parts = split_m_way(f, 2).expect("M = 2 is valid");
    let p = parts.pop().expect("two parts");
    let q = parts.pop().expect("two parts");
    (p, q)
}

/// `f(z) = sum_{n<M} z^n p_n(z^M)`; part `n` has coefficients `f_{kM+n}`.
pub fn split_m_way(f: &LaurentWindow, m: usize) -> Result<Vec<LaurentWindow>> {
    if m == 0 {
        return Err(Error::Domain("split factor M must be at least 1".into()));
    }
    let mi = m as i64;
    Ok((0..mi)
        .map(|n| {
            let lo = (f.lo - n).div_euclid(mi) + i64::from((f.lo - n).rem_euclid(mi) != 0);
            let hi = (f.hi() - n).div_euclid(mi);
            let coeffs = if hi >= lo {
                (lo..=hi)
                    .map(|k| f.coeffs[(k * mi + n - f.lo) as usize].clone())
                    .collect()
            } else {
                Vec::new()
            };
            LaurentWindow {
                lo,
                coeffs,
                exact: f.exact,
                tail_bound: f.tail_bound,
                below: if f.below.is_zero() { Tail::Zero } else { Tail::Unknown },
                above: if f.above.is_zero() { Tail::Zero } else { Tail::Unknown },
            }
        })
        .collect())
}

/// Interleaves an M-way split back into one window: the inverse of
/// [`split_m_way`] on the covered range.
pub fn reassemble(parts: &[LaurentWindow]) -> Result<LaurentWindow> {
    let m = parts.len() as i64;
    if m == 0 {
        return Err(Error::Domain("nothing to reassemble".into()));
    }
    let lo = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .map(|(n, p)| p.lo * m + n as i64)
        .min()
        .ok_or_else(|| Error::Range("all parts are empty".into()))?;
    let hi = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .map(|(n, p)| p.hi() * m + n as i64)
        .max()
        .expect("non-empty part exists");
    let coeffs = (lo..=hi)
        .map(|k| {
            let n = k.rem_euclid(m);
            parts[n as usize].get(k.div_euclid(m)).cloned()
        })
        .collect::<Result<Vec<_>>>()?;
    let exact = parts.iter().all(|p| p.exact);
    Ok(LaurentWindow {
        lo,
        coeffs,
        exact,
        tail_bound: parts.iter().filter_map(|p| p.tail_bound).reduce(f64::max),
        below: if parts.iter().all(|p| p.below.is_zero()) {
            Tail::Zero
        } else {
            Tail::Unknown
        },
        above: if parts.iter().all(|p| p.above.is_zero()) {
            Tail::Zero
        } else {
            Tail::Unknown
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn r(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn add_examples() {
        let one = LaurentWindow::from_ints(0, &[1]);
        let s = window_add(&one, &one, &int(1), &int(0)).unwrap();
        assert_eq!(s.coeffs(), &[int(1)]);

        let e = LaurentWindow::exact(0, r(&[(1, 1), (1, 1), (1, 2)]));
        let lin = LaurentWindow::from_ints(0, &[1, 1, 0]);
        let s = window_add(&e, &lin, &int(1), &int(1)).unwrap();
        assert_eq!(s.coeffs(), &r(&[(2, 1), (2, 1), (1, 2)])[..]);

        let p = LaurentWindow::from_ints(0, &[3, 4, 1]);
        let q = LaurentWindow::from_ints(0, &[2, 1, 0]);
        let s = window_add(&p, &q, &int(1), &int(2)).unwrap();
        assert_eq!(s.coeffs(), &[int(7), int(6), int(1)]);
        assert!(s.is_exact());
    }

    #[test]
    fn add_needs_overlap() {
        let a = LaurentWindow::from_ints(0, &[1, 2]);
        let b = LaurentWindow::from_ints(5, &[1]);
        assert!(matches!(window_add(&a, &b, &int(1), &int(1)), Err(Error::Range(_))));
    }

    #[test]
    fn add_tracks_inexactness() {
        let a = LaurentWindow::approx(0, vec![int(1)], 0.5);
        let b = LaurentWindow::from_ints(0, &[1]);
        let s = window_add(&a, &b, &int(2), &int(1)).unwrap();
        assert!(!s.is_exact());
        assert_eq!(s.tail_bound(), Some(1.0));
    }

    #[test]
    fn shift_examples() {
        let s = window_shift(&LaurentWindow::from_ints(0, &[1]));
        assert_eq!((s.lo(), s.hi()), (1, 1));
        let s = window_shift(&LaurentWindow::from_ints(0, &[3, 4, 1]));
        assert_eq!((s.lo(), s.hi()), (1, 3));
        assert_eq!(s.coeffs(), &[int(3), int(4), int(1)]);
        let s = window_shift(&LaurentWindow::polynomial(-1, vec![ratio(1, 2)]));
        assert_eq!(s.lo(), 0);
        assert_eq!(s.get(0).unwrap(), &ratio(1, 2));
    }

    #[test]
    fn mul_examples() {
        let lin = LaurentWindow::from_ints(0, &[1, 1]);
        // 1/(1 - z/2) on [0, 3], known to vanish below 0
        let geo = LaurentWindow::exact(0, r(&[(1, 1), (1, 2), (1, 4), (1, 8)])).with_tails(
            Tail::Zero,
            Tail::Geometric {
                bound: 1.0 / 8.0,
                ratio: 0.5,
            },
        );
        let prod = window_mul(&lin, &geo, 0, 3).unwrap();
        assert_eq!(prod.coeffs(), &r(&[(1, 1), (3, 2), (3, 4), (3, 8)])[..]);
        assert!(prod.is_exact());

        let one = LaurentWindow::from_ints(0, &[1]);
        let prod = window_mul(&one, &geo, 0, 3).unwrap();
        assert_eq!(prod.coeffs(), geo.coeffs());

        let sq = window_mul(&lin, &lin, 0, 2).unwrap();
        assert_eq!(sq.coeffs(), &[int(1), int(2), int(1)]);
        assert!(sq.has_finite_support());
    }

    #[test]
    fn mul_beyond_window_uses_decay() {
        let lin = LaurentWindow::from_ints(0, &[1, 1]);
        let geo = LaurentWindow::exact(0, r(&[(1, 1), (1, 2)]))
            .with_tails(Tail::Zero, Tail::Geometric { bound: 0.5, ratio: 0.5 });
        // coefficient 3 needs v_3 and v_2, both past the stored window
        let prod = window_mul(&lin, &geo, 0, 3).unwrap();
        assert!(!prod.is_exact());
        let tb = prod.tail_bound().unwrap();
        // true value of c_3 is 3/8; stored value is 0
        assert!(tb >= 3.0 / 8.0);

        let bare = LaurentWindow::exact(0, r(&[(1, 1), (1, 2)]));
        assert!(matches!(window_mul(&lin, &bare, 0, 3), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn split_examples() {
        let f = LaurentWindow::from_ints(0, &[1, 2, 3, 4, 5]);
        let (p, q) = split_even_odd(&f);
        assert_eq!((q.lo(), q.coeffs()), (0, &[int(1), int(3), int(5)][..]));
        assert_eq!((p.lo(), p.coeffs()), (0, &[int(2), int(4)][..]));

        let sq = LaurentWindow::from_ints(0, &[1, 2, 1]);
        let (p, q) = split_even_odd(&sq);
        assert_eq!(q.coeffs(), &[int(1), int(1)]);
        assert_eq!(p.coeffs(), &[int(2)]);

        let odd = LaurentWindow::from_ints(-3, &[7]);
        let (p, q) = split_even_odd(&odd);
        assert_eq!(p.get(-2).unwrap(), &int(7));
        assert!(q.is_empty());
        assert_eq!(reassemble(&[q, p]).unwrap(), odd);
    }

    #[test]
    fn split_m_examples() {
        let f = LaurentWindow::from_ints(0, &[1, 2, 3, 4, 5, 6]);
        let parts = split_m_way(&f, 3).unwrap();
        assert_eq!(parts[0].coeffs(), &[int(1), int(4)]);
        assert_eq!(parts[1].coeffs(), &[int(2), int(5)]);
        assert_eq!(parts[2].coeffs(), &[int(3), int(6)]);
        assert_eq!(split_m_way(&f, 1).unwrap(), vec![f.clone()]);
        assert!(matches!(split_m_way(&f, 0), Err(Error::Domain(_))));

        let g = LaurentWindow::from_ints(-4, &[1]);
        let parts = split_m_way(&g, 3).unwrap();
        assert_eq!(parts[2].get(-2).unwrap(), &int(1));
        assert!(parts[0].is_empty() && parts[1].is_empty());
    }

    #[test]
    fn padding_requires_zero_tails() {
        let f = LaurentWindow::from_ints(0, &[1, 2, 1]);
        let p = f.padded(-1, 2).unwrap();
        assert_eq!(p.get(-1).unwrap(), &int(0));
        let slice = LaurentWindow::exact(0, vec![int(1), int(2), int(1)]);
        assert!(slice.padded(-1, 2).is_err());
        assert!(matches!(slice.get(-1), Err(Error::OutsideWindow { index: -1, .. })));
    }
}
