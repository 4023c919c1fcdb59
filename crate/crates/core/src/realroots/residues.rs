use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::sturm::{isolate_real_roots, RootInterval, SturmSequence};
use super::RootValue;
use crate::error::{Error, Result};
use crate::poly::RationalPoly;
use crate::rational::{self, Rational};

/// A residue known exactly, or an interval certified not to contain zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueValue {
    Exact(Rational),
    Enclosure(Rational, Rational),
}

impl ResidueValue {
    pub fn signum(&self) -> i8 {
        let x = match self {
            ResidueValue::Exact(x) => x,
            ResidueValue::Enclosure(lo, _) => lo,
        };
        if x.is_zero() {
            0
        } else if x.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ResidueValue::Exact(x) => rational::to_f64(x),
            ResidueValue::Enclosure(lo, hi) => 0.5 * (rational::to_f64(lo) + rational::to_f64(hi)),
        }
    }
}

impl Serialize for ResidueValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ResidueValue::Exact(x) => s.collect_str(x),
            ResidueValue::Enclosure(lo, hi) => s.collect_seq([lo.to_string(), hi.to_string()]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueTerm {
    /// `a` for the term `A z / (z + a)`.
    pub pole: RootValue,
    pub coefficient: ResidueValue,
}

/// `C q / p = constant + polynomial(z) + sum A z / (z + a)`, with `polynomial(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractions {
    pub constant: Rational,
    pub polynomial: RationalPoly,
    pub terms: Vec<ResidueTerm>,
}

impl PartialFractions {
    pub fn all_positive(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient.is_positive())
    }
}

impl Serialize for PartialFractions {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PartialFractions", 3)?;
        st.serialize_field("constant", &self.constant.to_string())?;
        let poly: Vec<String> = self.polynomial.coeffs().iter().map(|c| c.to_string()).collect();
        st.serialize_field("polynomial", &poly)?;
        st.serialize_field("terms", &self.terms)?;
        st.end()
    }
}

#[derive(Debug, Clone)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn add_scalar(&self, c: &Rational) -> Self {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    fn mul(&self, o: &Interval) -> Self {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    /// Quotient; the divisor must exclude zero.
    fn div(&self, o: &Interval) -> Self {
        self.mul(&Interval {
            lo: o.hi.recip(),
            hi: o.lo.recip(),
        })
    }

    fn horner(p: &RationalPoly, x: &Interval) -> Self {
        p.coeffs()
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| acc.mul(x).add_scalar(c))
    }
}

/// Residues `A = C q(-a) / ((-a) p'(-a))` of `F = C q / p` at the poles `-a`.
///
/// `p` must have simple, real, strictly negative roots and no root in common
/// with `q`. Rational poles give exact residues; irrational ones give an
/// interval enclosure refined until its sign is certain.
pub fn partial_fraction_residues(c: &Rational, q: &RationalPoly, p: &RationalPoly) -> Result<PartialFractions> {
    if p.is_zero() {
        return Err(Error::Domain("zero denominator".into()));
    }
    if p.gcd(q).degree().unwrap_or(0) > 0 {
        return Err(Error::Domain("p and q share a root; cancel it first".into()));
    }
    let deg = p.degree().unwrap_or(0);
    let seq = SturmSequence::new(p)?;
    if seq.base().degree().unwrap_or(0) < deg {
        return Err(Error::Domain("p has a multiple root".into()));
    }
    let roots = isolate_real_roots(p)?.intervals;
    if roots.len() < deg {
        return Err(Error::Domain("p has non-real roots".into()));
    }
    if p.coeff(0).is_zero() {
        return Err(Error::Domain("pole at the origin".into()));
    }

    let cq = q.scale(c);
    let (quot, _) = cq.divrem(p)?;
    let constant = cq.coeff(0) / p.coeff(0);
    let polynomial = &quot - &RationalPoly::constant(quot.coeff(0));
    let zdp = &RationalPoly::monomial(Rational::one(), 1) * &p.derivative();

    let mut terms = Vec::with_capacity(roots.len());
    for mut iv in roots {
        while !iv.is_exact() && !iv.hi.is_negative() {
            iv.bisect(&seq);
        }
        if !iv.hi.is_negative() {
            return Err(Error::Domain("p has a positive root".into()));
        }
        let coefficient = residue_at(&cq, &zdp, &seq, &mut iv);
        terms.push(ResidueTerm {
            pole: RootValue::magnitude_of(&iv),
            coefficient,
        });
    }
    terms.reverse();
    Ok(PartialFractions {
        constant,
        polynomial,
        terms,
    })
}

fn residue_at(num: &RationalPoly, den: &RationalPoly, seq: &SturmSequence, iv: &mut RootInterval) -> ResidueValue {
    if iv.is_exact() {
        return ResidueValue::Exact(num.eval(&iv.lo) / den.eval(&iv.lo));
    }
    let fine = Rational::new(BigInt::one(), BigInt::one() << 40);
    loop {
        let x = Interval {
            lo: iv.lo.clone(),
            hi: iv.hi.clone(),
        };
        let n = Interval::horner(num, &x);
        let d = Interval::horner(den, &x);
        if n.excludes_zero() && d.excludes_zero() && iv.width() <= fine {
            let v = n.div(&d);
            return ResidueValue::Enclosure(v.lo, v.hi);
        }
        iv.bisect(seq);
        if iv.is_exact() {
            return ResidueValue::Exact(num.eval(&iv.lo) / den.eval(&iv.lo));
        }
    }
}
