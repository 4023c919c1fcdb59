#![allow(dead_code)]

use ghurwitz_core::rational::{int, ratio, Rational};
use ghurwitz_core::{LaurentWindow, RationalPoly};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=64).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..=20, 1i64..=64).prop_map(|(n, d)| ratio(n, d))
}

pub fn pos_rational() -> impl Strategy<Value = Rational> {
    (1i64..=64, 1i64..=64).prop_map(|(n, d)| ratio(n, d))
}

/// Finitely supported window with `lo` in `lo_range` and 1..=`max_len` coefficients.
pub fn window(lo_range: std::ops::RangeInclusive<i64>, max_len: usize) -> impl Strategy<Value = LaurentWindow> {
    (lo_range, prop::collection::vec(rational(), 1..=max_len)).prop_map(|(lo, c)| LaurentWindow::polynomial(lo, c))
}

/// Strictly increasing positive rationals.
pub fn chain(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(pos_rational(), len).prop_map(|steps| {
        let mut acc = int(0);
        steps
            .into_iter()
            .map(|s| {
                acc = &acc + s;
                acc.clone()
            })
            .collect()
    })
}

/// `(p, q)` whose roots interlace: magnitudes alternate `b_0 < a_0 < b_1 < ...`
/// with `b` from `q`; `zero_start` puts `b_0` at the origin.
pub fn interlacing_pair() -> impl Strategy<Value = (RationalPoly, RationalPoly)> {
    (chain(1..=5), any::<bool>()).prop_map(|(c, zero_start)| {
        let mut mags = c;
        if zero_start {
            mags.insert(0, int(0));
        }
        let (mut p, mut q) = (RationalPoly::one(), RationalPoly::one());
        for (k, m) in mags.into_iter().enumerate() {
            let f = RationalPoly::linear(m);
            if k % 2 == 0 {
                q = &q * &f;
            } else {
                p = &p * &f;
            }
        }
        (p, q)
    })
}

pub fn poly_window(p: &RationalPoly) -> LaurentWindow {
    LaurentWindow::polynomial(0, p.coeffs().to_vec())
}

/// `f = q(z^2) + z p(z^2)`.
pub fn hurwitz_poly(p: &RationalPoly, q: &RationalPoly) -> RationalPoly {
    let z = RationalPoly::monomial(int(1), 1);
    &q.compose_square() + &(&z * &p.compose_square())
}

/// Naive cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut acc = int(0);
    for j in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
