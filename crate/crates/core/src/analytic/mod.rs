//! Floating-point falsifiers for the half-plane, modulus and sector claims.
//!
//! Nothing here proves anything: a pass means no counterexample among the
//! sampled points. All sampling is seeded, and evaluation is parallel with a
//! fixed-order reduction, so reports do not depend on the thread count.

mod roots;
mod sampler;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{split_even_odd, LaurentWindow};
use crate::poly::RationalPoly;
use crate::rational::{to_f64, Rational};

pub use roots::{approximate_roots, sector_check, ApproxRoot, SectorReport};
pub use sampler::{ComplexSampler, Region};

pub const DEFAULT_TOL: f64 = 1e-9;

pub(crate) fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq([z.re, z.im])
}

/// `F(z) = C q(z) / p(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub c: Rational,
    pub q: RationalPoly,
    pub p: RationalPoly,
}

impl RationalFunction {
    pub fn new(c: Rational, q: RationalPoly, p: RationalPoly) -> Self {
        RationalFunction { c, q, p }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, RationalPoly::one(), RationalPoly::one())
    }

    /// `None` at a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        let d = self.p.eval_complex(z);
        if d.norm() == 0.0 {
            return None;
        }
        let v = self.q.eval_complex(z) * to_f64(&self.c) / d;
        v.is_finite().then_some(v)
    }
}

/// Sum of the stored terms `f_k z^k`.
pub fn eval_window(f: &LaurentWindow, z: Complex64) -> Complex64 {
    let c = f.to_f64_vec();
    let mut acc = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        acc = acc * z + ck;
    }
    acc * z.powi(f.lo() as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorstPoint {
    #[serde(serialize_with = "complex_pair")]
    pub z: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub value: Complex64,
    /// Distance to failure; negative means the inequality is violated.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub pass: bool,
    pub worst: Option<WorstPoint>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Runs `probe` on `sampler.count` admissible points (skipping those where it
/// returns `None`) and reports the point of smallest margin.
fn run_samples<F>(sampler: &ComplexSampler, tol: f64, probe: F) -> Result<NumericReport>
where
    F: Fn(Complex64) -> Option<(Complex64, f64)> + Sync,
{
    let want = sampler.count;
    let budget = 10 * want + 100;
    let mut stream = sampler.stream();
    let mut drawn = 0;
    let mut results: Vec<WorstPoint> = Vec::with_capacity(want);
    while results.len() < want && drawn < budget {
        let batch: Vec<Complex64> = stream.by_ref().take(want - results.len()).collect();
        drawn += batch.len();
        let evaluated: Vec<Option<WorstPoint>> = batch
            .par_iter()
            .map(|&z| probe(z).map(|(value, margin)| WorstPoint { z, value, margin }))
            .collect();
        results.extend(evaluated.into_iter().flatten());
    }
    if results.is_empty() && want > 0 {
        return Err(Error::Sampling("every sample hit a pole or zero".into()));
    }
    let worst = results
        .iter()
        .copied()
        .reduce(|a, b| if b.margin < a.margin { b } else { a });
    Ok(NumericReport {
        pass: worst.is_none_or(|w| w.margin >= 0.0),
        worst,
        samples: results.len(),
        seed: sampler.seed,
        tol,
    })
}

/// Tests `Im z * Im F(z) >= 0` at sampled points.
///
/// The score is `Im z * Im F / (|z| |F|)`, which has the same sign but does
/// not grow with the size of `z` or `F`; a sample fails when it drops below
/// `-tol`.
pub fn sample_im_nonneg(f: &RationalFunction, sampler: &ComplexSampler, tol: f64) -> Result<NumericReport> {
    run_samples(sampler, tol, |z| {
        let v = f.eval(z)?;
        let n = z.norm() * v.norm();
        let score = if n == 0.0 { 0.0 } else { z.im * v.im / n };
        Some((v, score + tol))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusReport {
    pub pass: bool,
    /// `|h(-z)| / |h(z)|`.
    pub direct: NumericReport,
    /// `|q(z^2) - z p(z^2)| / |q(z^2) + z p(z^2)|` with `h(z) = q(z^2) + z p(z^2)`.
    pub mobius: NumericReport,
    /// Whether both forms reached the same verdict.
    pub agree: bool,
}

/// Tests `|h(-z)| <= |h(z)|` on right half-plane samples, in the direct form
/// and through the even/odd split.
///
/// The window's tail bound, if any, is added to the tolerance.
pub fn check_modulus_inequality(h: &LaurentWindow, sampler: &ComplexSampler, tol: f64) -> Result<ModulusReport> {
    let slack = 1.0 + tol + h.tail_bound().unwrap_or(0.0);
    let direct = run_samples(sampler, tol, |z| {
        let den = eval_window(h, z);
        if den.norm() == 0.0 {
            return None;
        }
        let v = eval_window(h, -z) / den;
        v.is_finite().then(|| (v, slack - v.norm()))
    })?;
    let (p, q) = split_even_odd(h);
    let mobius = run_samples(sampler, tol, |z| {
        let z2 = z * z;
        let (pz, qz) = (z * eval_window(&p, z2), eval_window(&q, z2));
        let den = qz + pz;
        if den.norm() == 0.0 {
            return None;
        }
        let v = (qz - pz) / den;
        v.is_finite().then(|| (v, slack - v.norm()))
    })?;
    let agree = direct.pass == mobius.pass;
    Ok(ModulusReport {
        pass: direct.pass && mobius.pass,
        direct,
        mobius,
        agree,
    })
}

/// Tests `Re w(z) >= 0` for `w(z) = z p(z^2) / q(z^2)` on sampled points.
///
/// Scored as `Re(z p conj(q)) / (|z p| |q|)`, the cosine of `arg w`, so the
/// test is insensitive to scale and to zeros of `q` away from the samples.
/// When `q` vanishes identically the reciprocal `1/w` is reported instead;
/// it has the same argument up to sign and so the same verdict.
pub fn check_rhp_mapping(
    p: &LaurentWindow,
    q: &LaurentWindow,
    sampler: &ComplexSampler,
    tol: f64,
) -> Result<NumericReport> {
    let tb = p.tail_bound().unwrap_or(0.0) + q.tail_bound().unwrap_or(0.0);
    let reciprocal = q.coeffs().iter().all(|c| c.is_zero());
    run_samples(sampler, tol, |z| {
        let z2 = z * z;
        let (mut num, mut den) = (z * eval_window(p, z2), eval_window(q, z2));
        if reciprocal {
            std::mem::swap(&mut num, &mut den);
        }
        if den.norm() == 0.0 {
            return None;
        }
        let w = num / den;
        let n = num.norm() * den.norm();
        let cos = if n == 0.0 { 0.0 } else { (num * den.conj()).re / n };
        w.is_finite().then_some((w, cos + tol + tb))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityWitness {
    #[serde(serialize_with = "complex_pair")]
    pub z: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub value: Complex64,
}

/// Searches the imaginary axis for a point where
/// `G(z) = exp(A z + A0 / z) z^j F(z)` is negative real.
///
/// Tracks the continuous argument of `G(ir)` outward from `r = 1` in both
/// directions over `[1/r_max, r_max]` and returns the crossing of
/// `pi (mod 2 pi)` nearest to `r = 1` on a log scale.
pub fn exhibit_negativity_exponential(
    a: f64,
    a0: f64,
    j: i32,
    f: &RationalFunction,
    r_max: f64,
    tol: f64,
) -> Result<Option<NegativityWitness>> {
    if a < 0.0 || a0 < 0.0 || a * a + a0 * a0 == 0.0 {
        return Err(Error::Precondition("need A, A0 >= 0, not both zero".into()));
    }
    if r_max <= 1.0 {
        return Ok(None);
    }
    let g = |t: f64| -> Option<Complex64> {
        let r = t.exp();
        let z = Complex64::new(0.0, r);
        let e = Complex64::new(0.0, a * r - a0 / r).exp();
        let v = e * z.powi(j) * f.eval(z)?;
        (v.is_finite() && v.norm() > 0.0).then_some(v)
    };
    let limit = r_max.ln();
    let best = [1.0, -1.0]
        .into_iter()
        .filter_map(|dir| scan_phase(&g, dir, limit))
        .min_by(|x, y| x.abs().total_cmp(&y.abs()));
    Ok(best.and_then(|t| {
        let value = g(t)?;
        let ok = value.re < 0.0 && value.im.abs() <= tol.max(1e-12) * value.norm();
        ok.then(|| NegativityWitness {
            z: Complex64::new(0.0, t.exp()),
            value,
        })
    }))
}

fn wrap(x: f64) -> f64 {
    use std::f64::consts::PI;
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

// First t (in log-radius, moving in direction `dir`) where the unwrapped
// argument of g crosses an odd multiple of pi.
fn scan_phase<G: Fn(f64) -> Option<Complex64>>(g: &G, dir: f64, limit: f64) -> Option<f64> {
    use std::f64::consts::PI;
    let level = |phi: f64| ((phi - PI) / (2.0 * PI)).floor();
    let mut t = 0.0;
    let mut v = g(t)?;
    let mut phi = v.arg();
    if phi == PI {
        return Some(0.0);
    }
    let mut h = 1e-3;
    while t.abs() < limit {
        let t_next = dir * (t.abs() + h).min(limit);
        let Some(v_next) = g(t_next) else {
            t = t_next;
            continue;
        };
        let d = wrap(v_next.arg() - v.arg());
        if d.abs() > 0.3 && h > 1e-12 {
            h *= 0.5;
            continue;
        }
        let phi_next = phi + d;
        if level(phi_next) != level(phi) {
            let target = PI + 2.0 * PI * level(phi).max(level(phi_next));
            let (mut lo, mut hi) = (t, t_next);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let Some(vm) = g(mid) else { break };
                let pm = phi + wrap(vm.arg() - v.arg());
                if (pm - target).signum() == (phi - target).signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if (hi - lo).abs() < 1e-15 {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        t = t_next;
        v = v_next;
        phi = phi_next;
        if d.abs() < 0.05 {
            h = (h * 2.0).min(0.05);
        }
    }
    None
}
