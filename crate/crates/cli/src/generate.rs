//! Seeded instance generators. Every instance draws from its own ChaCha
//! stream, so instance `i` is the same whatever else runs alongside it.

use ghurwitz_core::rational::{self, int, ratio, Rational};
use ghurwitz_core::RationalPoly;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_DENOM: i64 = 64;
pub const MAX_CHAIN: usize = 5;

pub fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed for the numeric samplers of instance `index`.
pub fn sample_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

/// Positive rational `n/d` with `d <= MAX_DENOM` and value at most `max`.
pub fn small_positive(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    let d = rng.gen_range(1..=MAX_DENOM);
    let n = rng.gen_range(1..=max * d);
    ratio(n, d)
}

/// Strictly increasing nonnegative magnitudes; the first may be zero.
pub fn chain(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let len = rng.gen_range(1..=MAX_CHAIN);
    let mut v: Vec<Rational> = Vec::with_capacity(len);
    if rng.gen_bool(0.25) {
        v.push(int(0));
    }
    while v.len() < len {
        let x = small_positive(rng, 8);
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v.sort();
    v
}

/// Splits an alternating chain into `(p, q)`: even positions are zeros of
/// `q`, odd positions zeros of `p`, each at `-x`.
pub fn chain_pair(chain: &[Rational]) -> (RationalPoly, RationalPoly) {
    let zeros: Vec<Rational> = chain.iter().step_by(2).map(|x| -x.clone()).collect();
    let poles: Vec<Rational> = chain.iter().skip(1).step_by(2).map(|x| -x.clone()).collect();
    (RationalPoly::from_roots(&poles), RationalPoly::from_roots(&zeros))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Zeros and poles trade places.
    Swap,
    /// The two smallest chain elements trade labels. Exchanges further up
    /// the chain can push every negative minor beyond order 3.
    Exchange,
    /// One root moves to the positive axis.
    Reflect,
    /// One zero is doubled at the expense of a pole.
    Double,
}

/// A non-interlacing pair derived from `chain` (which must have at least two
/// elements); returns `(p, q)`.
pub fn mutate(rng: &mut ChaCha8Rng, chain: &[Rational], kind: Mutation) -> (RationalPoly, RationalPoly) {
    let n = chain.len();
    debug_assert!(n >= 2);
    let (p, q) = chain_pair(chain);
    match kind {
        Mutation::Swap => (q, p),
        Mutation::Exchange => {
            let mut labels: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
            labels.swap(0, 1);
            let pick = |zero: bool| {
                let roots: Vec<Rational> = chain
                    .iter()
                    .zip(&labels)
                    .filter(|(_, &l)| l == zero)
                    .map(|(x, _)| -x.clone())
                    .collect();
                RationalPoly::from_roots(&roots)
            };
            (pick(false), pick(true))
        }
        Mutation::Reflect => {
            let nonzero: Vec<usize> = (0..n).filter(|&i| chain[i] != int(0)).collect();
            let k = *nonzero.choose(rng).expect("chain has a positive element");
            let mut c = chain.to_vec();
            let reflected = c[k].clone();
            c.remove(k);
            let (p, q) = chain_pair(&c);
            // root at +x
            let factor = RationalPoly::linear(-reflected);
            if k.is_multiple_of(2) {
                (p, &q * &factor)
            } else {
                (&p * &factor, q)
            }
        }
        Mutation::Double => {
            // the pole right after a zero becomes a second copy of that zero
            let zeros: Vec<usize> = (0..n - 1).step_by(2).collect();
            let k = *zeros.choose(rng).expect("chain has a pole");
            let mut zs: Vec<Rational> = chain.iter().step_by(2).map(|x| -x.clone()).collect();
            zs.push(-chain[k].clone());
            let ps: Vec<Rational> = chain
                .iter()
                .enumerate()
                .filter(|&(i, _)| i % 2 == 1 && i != k + 1)
                .map(|(_, x)| -x.clone())
                .collect();
            (RationalPoly::from_roots(&ps), RationalPoly::from_roots(&zs))
        }
    }
}

/// Closed left half-plane factors: real roots `-xi` and pairs
/// `-re +- i sqrt(im2)`.
fn stable_factors(rng: &mut ChaCha8Rng, reals: usize, quads: usize) -> (Vec<Rational>, Vec<(Rational, Rational)>) {
    let xs = (0..reals)
        .map(|_| {
            if rng.gen_bool(0.15) {
                int(0)
            } else {
                small_positive(rng, 4)
            }
        })
        .collect();
    let pairs = (0..quads)
        .map(|_| {
            let re = if rng.gen_bool(0.15) {
                int(0)
            } else {
                small_positive(rng, 4)
            };
            (re, small_positive(rng, 4))
        })
        .collect();
    (xs, pairs)
}

/// Picks a simple rational in `(lo, hi]`.
fn between(lo: Rational, hi: Rational) -> Rational {
    rational::simplest_between(&lo, &hi)
}

/// A product of `(z + xi)` and `(z^2 + 2 re z + re^2 + im2)` factors of
/// degree `1..=max_degree`, all roots in the closed left half-plane.
///
/// With `flip`, one extra real root or conjugate pair is placed in the open
/// right half-plane so that it dominates either the sum of the roots or the
/// sum of their reciprocals. Then `|f(-z)| > |f(z)|` on a whole range of
/// large (or small) `|z|` in the right half-plane, which log-uniform sampling
/// reaches with high probability. A reflection hidden among nearby left
/// half-plane roots only violates the inequality on a tiny patch.
///
/// Returns the polynomial and its factors.
pub fn stability_instance(rng: &mut ChaCha8Rng, max_degree: usize, flip: bool) -> (RationalPoly, Vec<String>) {
    let degree = rng.gen_range(1..=max_degree);
    let flip_quad = flip && degree >= 2 && rng.gen_bool(0.4);
    let rest = degree - usize::from(flip) - usize::from(flip_quad);
    let quads = rng.gen_range(0..=rest / 2);
    let (mut xs, mut pairs) = stable_factors(rng, rest - 2 * quads, quads);

    if flip {
        // |Re| of the other roots, and |Re 1/root| over the nonzero ones
        let mut sum = Rational::zero();
        let mut inv = Rational::zero();
        for x in xs.iter().filter(|x| !x.is_zero()) {
            sum += x;
            inv += int(1) / x;
        }
        for (re, im2) in &pairs {
            sum += int(2) * re;
            inv += int(2) * re / (re * re + im2);
        }
        let at_infinity = rng.gen_bool(0.5);
        let three_halves = ratio(3, 2);
        if flip_quad {
            let s = ratio(rng.gen_range(1..=16), 4);
            let re = if at_infinity {
                // 2 re > 3/2 sum
                if sum.is_zero() {
                    small_positive(rng, 2)
                } else {
                    between(&sum * ratio(3, 4), &sum * &three_halves)
                }
            } else {
                // 2 re / (re^2 (1 + s)) > 3/2 inv
                if inv.is_zero() {
                    small_positive(rng, 2)
                } else {
                    let top = int(4) / (int(3) * &inv * (int(1) + &s));
                    between(&top / int(2), &top * ratio(9, 10))
                }
            };
            let im2 = &re * &re * s;
            pairs.insert(0, (-re, im2));
        } else {
            let xi = if at_infinity {
                if sum.is_zero() {
                    small_positive(rng, 4)
                } else {
                    between(&sum * &three_halves, &sum * int(3))
                }
            } else if inv.is_zero() {
                small_positive(rng, 4)
            } else {
                between(int(1) / (int(3) * &inv), int(2) / (int(3) * &inv))
            };
            xs.insert(0, -xi);
        }
    }

    let mut f = RationalPoly::one();
    let mut desc = Vec::new();
    for xi in xs {
        desc.push(format!("z + {xi}"));
        f = &f * &RationalPoly::linear(xi);
    }
    for (re, im2) in pairs {
        let c = &re * &re + im2;
        desc.push(format!("z^2 + {} z + {}", int(2) * &re, c));
        f = &f * &RationalPoly::new(vec![c, int(2) * re, int(1)]);
    }
    (f, desc)
}

/// Laurent polynomial `z^shift * prod(...)` for the sector suite, returned
/// as ascending coefficients from index `shift`. Roots are placed anywhere,
/// so only some instances satisfy the hypothesis.
pub fn sector_instance(rng: &mut ChaCha8Rng) -> (i64, RationalPoly) {
    let shift = rng.gen_range(-2..=2);
    let mut f = RationalPoly::one();
    let factors = rng.gen_range(1..=4);
    for _ in 0..factors {
        if rng.gen_bool(0.5) {
            let x = small_positive(rng, 4);
            let x = if rng.gen_bool(0.85) { x } else { -x };
            f = &f * &RationalPoly::linear(x);
        } else {
            // z^2 + b z + c with complex roots
            let c = small_positive(rng, 4);
            let bound = int(4) * &c;
            let mut b = small_positive(rng, 4);
            while &b * &b >= bound {
                b /= int(2);
            }
            if rng.gen_bool(0.3) {
                b = -b;
            }
            f = &f * &RationalPoly::new(vec![c, b, int(1)]);
        }
    }
    (shift, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghurwitz_core::realroots::{check_interlacing, quasi_stable_exact};

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<u32> = (0..3).map(|i| instance_rng(7, i).gen()).collect();
        let b: Vec<u32> = (0..3).rev().map(|i| instance_rng(7, i).gen()).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn chains_interlace_and_mutants_do_not() {
        for i in 0..200 {
            let mut rng = instance_rng(1, i);
            let c = chain(&mut rng);
            assert!(c.windows(2).all(|w| w[0] < w[1]));
            let (p, q) = chain_pair(&c);
            assert!(check_interlacing(&p, &q).unwrap().is_s_function);
            if c.len() < 2 {
                continue;
            }
            for kind in [Mutation::Swap, Mutation::Exchange, Mutation::Reflect, Mutation::Double] {
                if kind == Mutation::Double && c.len() < 2 {
                    continue;
                }
                let (p, q) = mutate(&mut rng, &c, kind);
                assert!(!check_interlacing(&p, &q).unwrap().is_s_function, "{kind:?} {c:?}");
            }
        }
    }

    #[test]
    fn stability_flags_match_construction() {
        for i in 0..200 {
            let mut rng = instance_rng(2, i);
            let flip = i % 2 == 1;
            let (f, _) = stability_instance(&mut rng, 8, flip);
            assert!(f.degree().unwrap() <= 8);
            assert_eq!(quasi_stable_exact(&f).unwrap(), !flip);
        }
    }
}
