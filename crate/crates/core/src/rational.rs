//! The exact coefficient field.
//!
//! `BigRational` keeps itself reduced (positive denominator, coprime parts)
//! after every operation, so equality and zero tests are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (base 10, optional sign on `p`).
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` form, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: fall back on a scaled quotient
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Simplest rational (smallest denominator) in the half-open interval `(lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    let inner = simplest_open(lo, Some(hi));
    if simpler(hi, &inner) {
        hi.clone()
    } else {
        inner
    }
}

fn simpler(a: &Rational, b: &Rational) -> bool {
    (a.denom(), a.numer().abs()) < (b.denom(), b.numer().abs())
}

// Continued-fraction descent for the open interval (lo, hi); `None` is +infinity.
fn simplest_open(lo: &Rational, hi: Option<&Rational>) -> Rational {
    match hi {
        Some(h) if lo.is_negative() && h.is_positive() => return Rational::zero(),
        Some(h) if !h.is_positive() => {
            let neg_lo = -h;
            let neg_hi = -lo;
            return -simplest_open(&neg_lo, Some(&neg_hi));
        }
        _ => {}
    }
    // here lo >= 0
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(h) if next < *h => next,
        Some(h) => {
            let a = lo - &fl;
            let b = h - &fl;
            let upper = if a.is_zero() { None } else { Some(a.recip()) };
            fl + simplest_open(&b.recip(), upper.as_ref()).recip()
        }
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// `serialize_with` helpers writing rationals as `"p/q"` strings.
pub mod as_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-4").unwrap(), int(-4));
        assert_eq!(parse(" 2/-4 ").unwrap(), ratio(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(format(&ratio(-2, 4)), "-1/2");
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(2, 3)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(7, 5), &ratio(3, 2)), ratio(3, 2));
        assert_eq!(simplest_between(&ratio(7, 5), &ratio(29, 20)), ratio(10, 7));
        assert_eq!(simplest_between(&ratio(-3, 2), &ratio(-1, 2)), int(-1));
        assert_eq!(simplest_between(&ratio(-1, 2), &ratio(1, 2)), int(0));
        assert_eq!(simplest_between(&ratio(0, 1), &ratio(1, 10)), ratio(1, 10));
        assert_eq!(simplest_between(&ratio(-1, 3), &ratio(-1, 4)), ratio(-1, 4));
        assert_eq!(simplest_between(&ratio(-2, 5), &ratio(-1, 3)), ratio(-1, 3));
    }
}
