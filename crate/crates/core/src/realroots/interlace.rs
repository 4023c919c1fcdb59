use num_traits::Signed;

use super::sturm::{isolate_real_roots, separate, RootInterval, SturmSequence};
use super::{ChainElement, ChainKind, ChainSide, RootValue, SVerdict};
use crate::error::{Error, Result};
use crate::poly::RationalPoly;
use crate::rational::Rational;

// Why a polynomial fails to have only real, nonpositive roots.
fn root_location_problem(
    f: &RationalPoly,
    seq: &SturmSequence,
    iso: &mut [RootInterval],
    simple: bool,
    kind: ChainKind,
) -> Option<(String, Option<ChainElement>)> {
    let deg = f.degree().unwrap_or(0);
    let sqf = seq.base().degree().unwrap_or(0);
    let name = match kind {
        ChainKind::Zero => "numerator",
        ChainKind::Pole => "denominator",
    };
    if simple && sqf < deg {
        return Some((format!("{name} has a multiple root"), None));
    }
    if iso.len() < sqf {
        return Some((format!("{name} has {} non-real roots", sqf - iso.len()), None));
    }
    for iv in iso.iter_mut() {
        while !iv.is_exact() && iv.lo.is_negative() && iv.hi.is_positive() {
            iv.bisect(seq);
        }
        let positive = if iv.is_exact() {
            iv.lo.is_positive()
        } else {
            !iv.lo.is_negative()
        };
        if positive {
            let witness = ChainElement {
                kind,
                side: ChainSide::Pos,
                value: RootValue::magnitude_of(iv),
            };
            return Some((format!("{name} has a positive root"), Some(witness)));
        }
    }
    None
}

/// Decides whether `F = q / p` has the interlacing structure
/// `0 <= b_0 < a_0 < b_1 < a_1 < ...` of an S-function ratio, where `-b_k` are
/// the roots of `q` and `-a_k` those of `p`.
///
/// A common factor is cancelled first; it must itself have only real
/// nonpositive roots. The reduced numerator and denominator must have simple,
/// real, nonpositive roots, leading coefficients of equal sign, and
/// magnitudes alternating from a zero of `q`.
pub fn check_interlacing(p: &RationalPoly, q: &RationalPoly) -> Result<SVerdict> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("interlacing needs nonzero p and q".into()));
    }
    let g = p.gcd(q);
    let cancelled = g.degree().unwrap_or(0);
    let p1 = p.div_exact(&g)?;
    let q1 = q.div_exact(&g)?;

    if cancelled > 0 {
        let seq = SturmSequence::new(&g)?;
        let mut iso = isolate_real_roots(&g)?.intervals;
        if let Some((reason, w)) = root_location_problem(&g, &seq, &mut iso, false, ChainKind::Zero) {
            let reason = reason.replace("numerator", "common factor");
            return Ok(SVerdict::reject(reason, w, Vec::new(), cancelled));
        }
    }
    if (p.lead() * q.lead()).is_negative() {
        return Ok(SVerdict::reject(
            "leading coefficients of p and q differ in sign",
            None,
            Vec::new(),
            cancelled,
        ));
    }

    let seqs = [SturmSequence::new(&q1)?, SturmSequence::new(&p1)?];
    let kinds = [ChainKind::Zero, ChainKind::Pole];
    let mut items: Vec<(usize, RootInterval)> = Vec::new();
    for (k, f) in [&q1, &p1].into_iter().enumerate() {
        let mut iso = isolate_real_roots(f)?.intervals;
        if let Some((reason, w)) = root_location_problem(f, &seqs[k], &mut iso, true, kinds[k]) {
            return Ok(SVerdict::reject(reason, w, Vec::new(), cancelled));
        }
        items.extend(iso.into_iter().map(|iv| (k, iv)));
    }
    separate(&mut items, |k| &seqs[k]);

    let chain: Vec<ChainElement> = items
        .iter()
        .rev()
        .map(|(k, iv)| ChainElement {
            kind: kinds[*k],
            side: ChainSide::Pos,
            value: RootValue::magnitude_of(iv),
        })
        .collect();
    if let Some(first) = chain.first() {
        if first.kind != ChainKind::Zero {
            let w = Some(first.clone());
            return Ok(SVerdict::reject("smallest root belongs to p", w, chain, cancelled));
        }
    }
    if let Some(i) = (1..chain.len()).find(|&i| chain[i].kind == chain[i - 1].kind) {
        let w = Some(chain[i].clone());
        return Ok(SVerdict::reject(
            "zeros and poles do not alternate",
            w,
            chain,
            cancelled,
        ));
    }
    Ok(SVerdict::accept(chain, cancelled))
}

/// Zero magnitudes of a two-sided product: `pos` for factors `1 + z/x`,
/// `neg` for factors `1 + 1/(x z)` (whose zero has magnitude `1/x`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSidedZeros {
    pub pos: Vec<Rational>,
    pub neg: Vec<Rational>,
}

impl TwoSidedZeros {
    pub fn new(pos: Vec<Rational>, neg: Vec<Rational>) -> Self {
        TwoSidedZeros { pos, neg }
    }
}

/// Checks the two-sided chain
/// `... < 1/a_{-2} < 1/b_{-1} < 1/a_{-1} < b_1 < a_1 < b_2 < ...`
/// for `F = q / p`, where `b` are the zero parameters of `q` and `a` those of `p`.
///
/// Every `1/z`-side magnitude must lie below every `z`-side magnitude, the
/// merged sequence must alternate strictly, the largest `1/z`-side element
/// must be a pole and the smallest `z`-side element a zero.
pub fn laurent_interlacing_check(p: &TwoSidedZeros, q: &TwoSidedZeros) -> Result<SVerdict> {
    let all = [&p.pos, &p.neg, &q.pos, &q.neg];
    if all.iter().any(|v| v.iter().any(|x| !x.is_positive())) {
        return Err(Error::Domain("zero parameters must be positive".into()));
    }
    let mut neg: Vec<ChainElement> = Vec::new();
    let mut pos: Vec<ChainElement> = Vec::new();
    for (f, kind) in [(p, ChainKind::Pole), (q, ChainKind::Zero)] {
        for x in &f.pos {
            pos.push(ChainElement {
                kind,
                side: ChainSide::Pos,
                value: RootValue::Exact(x.clone()),
            });
        }
        for x in &f.neg {
            let v = RootValue::Exact(x.recip());
            neg.push(ChainElement {
                kind,
                side: ChainSide::Neg,
                value: v,
            });
        }
    }
    let key = |e: &ChainElement| e.value.lo().clone();
    neg.sort_by_key(key);
    pos.sort_by_key(key);

    let mut chain = neg.clone();
    chain.extend(pos.iter().cloned());
    let reject = |reason: &str, w: &ChainElement, chain: &Vec<ChainElement>| {
        Ok(SVerdict::reject(reason, Some(w.clone()), chain.clone(), 0))
    };

    if let (Some(top), Some(bottom)) = (neg.last(), pos.first()) {
        if top.value.lo() >= bottom.value.lo() {
            return reject("1/z-side magnitude reaches the z side", top, &chain);
        }
    }
    if let Some(i) = (1..chain.len()).find(|&i| chain[i].value == chain[i - 1].value) {
        return reject("coincident zero and pole magnitudes", &chain[i], &chain);
    }
    if let Some(i) = (1..chain.len()).find(|&i| chain[i].kind == chain[i - 1].kind) {
        return reject("zeros and poles do not alternate", &chain[i], &chain);
    }
    if let Some(top) = neg.last() {
        if top.kind != ChainKind::Pole {
            return reject("largest 1/z-side element is a zero", top, &chain);
        }
    }
    if let Some(bottom) = pos.first() {
        if bottom.kind != ChainKind::Zero {
            return reject("smallest z-side element is a pole", bottom, &chain);
        }
    }
    Ok(SVerdict::accept(chain, 0))
}
