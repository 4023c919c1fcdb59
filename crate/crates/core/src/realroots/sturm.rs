use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::RationalPoly;
use crate::rational::{self, int, Rational};

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    polys: Vec<RationalPoly>,
}

impl SturmSequence {
    pub fn new(p: &RationalPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Domain("Sturm sequence of the zero polynomial".into()));
        }
        let s = p.squarefree_part();
        let mut polys = vec![s.clone(), s.derivative()];
        while !polys.last().unwrap().is_zero() {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the sign pattern
            let l = r.lead().abs();
            polys.push(-&r.scale(&(Rational::one() / l)));
        }
        if polys.last().unwrap().is_zero() {
            polys.pop();
        }
        Ok(SturmSequence { polys })
    }

    /// The squarefree polynomial the chain starts from.
    pub fn base(&self) -> &RationalPoly {
        &self.polys[0]
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.polys {
            let y = p.eval(x);
            let s = if y.is_zero() {
                0
            } else if y.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// One isolated real root: exactly `lo` when `lo == hi`, otherwise inside the open interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "rational::as_string::serialize")]
    pub lo: Rational,
    #[serde(serialize_with = "rational::as_string::serialize")]
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn exact(x: Rational, multiplicity: usize) -> Self {
        RootInterval {
            lo: x.clone(),
            hi: x,
            multiplicity,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational::to_f64(&((&self.lo + &self.hi) / int(2)))
    }

    /// Halves the interval; `seq` must be the chain of a polynomial owning this root.
    pub fn bisect(&mut self, seq: &SturmSequence) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / int(2);
        if seq.base().eval(&mid).is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
        } else if seq.count(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisects until the width is at most `w`, snapping to an exact rational root when one exists.
    pub fn refine_to(&mut self, seq: &SturmSequence, w: &Rational) {
        while !self.is_exact() && self.width() > *w {
            self.bisect(seq);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
}

impl RootIsolation {
    pub fn distinct(&self) -> usize {
        self.intervals.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.intervals.iter().map(|r| r.multiplicity).sum()
    }
}

/// Bound `1 + max |c_k / c_n|` on the modulus of every root.
pub fn cauchy_bound(p: &RationalPoly) -> Rational {
    let l = p.lead().abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &l)
        .max()
        .unwrap_or_else(Rational::zero);
    m + int(1)
}

fn isolate_squarefree(
    seq: &SturmSequence,
    lo: Rational,
    hi: Rational,
    multiplicity: usize,
    out: &mut Vec<RootInterval>,
) {
    let n = seq.count(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        if seq.base().eval(&hi).is_zero() {
            out.push(RootInterval::exact(hi, multiplicity));
        } else {
            out.push(RootInterval { lo, hi, multiplicity });
        }
        return;
    }
    let mid = (&lo + &hi) / int(2);
    isolate_squarefree(seq, lo, mid.clone(), multiplicity, out);
    isolate_squarefree(seq, mid, hi, multiplicity, out);
}

// Any rational root of a primitive integer polynomial with leading
// coefficient L has denominator dividing L, and two such numbers differ by at
// least 1/L^2; so once an isolating interval is that narrow its simplest
// rational is the only possible rational root.
fn snap_rational(seq: &SturmSequence, iv: &mut RootInterval) {
    let lead: BigInt = seq
        .base()
        .primitive_integer()
        .last()
        .cloned()
        .unwrap_or_else(BigInt::one);
    let limit = Rational::new(BigInt::one(), &lead * &lead);
    while !iv.is_exact() {
        let c = rational::simplest_between(&iv.lo, &iv.hi);
        if c != iv.hi && seq.base().eval(&c).is_zero() {
            *iv = RootInterval::exact(c, iv.multiplicity);
            return;
        }
        if iv.width() < limit {
            return;
        }
        iv.bisect(seq);
    }
}

fn chains(p: &RationalPoly) -> Result<Vec<(SturmSequence, usize)>> {
    if p.is_zero() {
        return Err(Error::Domain("root isolation of the zero polynomial".into()));
    }
    p.squarefree_decomposition()
        .into_iter()
        .map(|(a, m)| Ok((SturmSequence::new(&a)?, m)))
        .collect()
}

/// Isolates the distinct real roots of `p` in `(lo, hi]`, with multiplicities.
///
/// Rational roots come back as exact points; irrational ones as open
/// intervals narrow enough to rule out any rational root.
pub fn sturm_isolate(p: &RationalPoly, lo: &Rational, hi: &Rational) -> Result<RootIsolation> {
    if lo >= hi {
        return Err(Error::Range(format!("empty interval ({lo}, {hi}]")));
    }
    let parts = chains(p)?;
    let mut tagged: Vec<(usize, RootInterval)> = Vec::new();
    for (k, (seq, m)) in parts.iter().enumerate() {
        let mut found = Vec::new();
        isolate_squarefree(seq, lo.clone(), hi.clone(), *m, &mut found);
        for mut iv in found {
            snap_rational(seq, &mut iv);
            tagged.push((k, iv));
        }
    }
    separate(&mut tagged, |k| &parts[k].0);
    Ok(RootIsolation {
        intervals: tagged.into_iter().map(|(_, iv)| iv).collect(),
    })
}

/// All real roots of `p`.
pub fn isolate_real_roots(p: &RationalPoly) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::Domain("root isolation of the zero polynomial".into()));
    }
    let b = cauchy_bound(p);
    sturm_isolate(p, &-b.clone(), &b)
}

/// Sorts isolated roots of pairwise coprime polynomials, bisecting until no
/// two intervals overlap.
pub(crate) fn separate<'a, F>(items: &mut [(usize, RootInterval)], seq_of: F)
where
    F: Fn(usize) -> &'a SturmSequence,
{
    loop {
        items.sort_by(|a, b| (&a.1.lo, &a.1.hi).cmp(&(&b.1.lo, &b.1.hi)));
        let mut clean = true;
        for i in 1..items.len() {
            let overlap = items[i - 1].1.hi > items[i].1.lo;
            if overlap {
                clean = false;
                let (a, b) = items.split_at_mut(i);
                let (ka, ia) = &mut a[i - 1];
                let (kb, ib) = &mut b[0];
                ia.bisect(seq_of(*ka));
                ib.bisect(seq_of(*kb));
            }
        }
        if clean {
            return;
        }
    }
}
