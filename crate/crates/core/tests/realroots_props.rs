mod common;

use common::*;
use ghurwitz_core::analytic::approximate_roots;
use ghurwitz_core::rational::{int, ratio, Rational};
use ghurwitz_core::realroots::{
    check_interlacing, isolate_real_roots, partial_fraction_residues, quasi_stable_exact, routh_quasi_stability,
};
use ghurwitz_core::structmat::MatrixView;
use ghurwitz_core::tnn::check_tnn;
use ghurwitz_core::RationalPoly;
use proptest::prelude::*;

/// Real roots (with multiplicity) and a product of them with irreducible quadratics.
fn factored() -> impl Strategy<Value = (Vec<Rational>, RationalPoly)> {
    (
        prop::collection::vec((rational(), 1usize..=2), 0..=4),
        prop::collection::vec((rational(), pos_rational()), 0..=2),
    )
        .prop_map(|(reals, quads)| {
            let mut f = RationalPoly::one();
            let mut roots = Vec::new();
            for (r, m) in reals {
                for _ in 0..m {
                    f = &f * &RationalPoly::linear(-r.clone());
                    roots.push(r.clone());
                }
            }
            for (b, extra) in quads {
                // z^2 + b z + c with c > b^2/4
                let c = &b * &b / int(4) + extra;
                f = &f * &RationalPoly::new(vec![c, b, int(1)]);
            }
            (roots, f)
        })
}

/// Polynomial from closed left half-plane factors, optionally with one factor
/// reflected into the right half-plane. Returns `(f, quasi_stable)`.
fn stability_instance() -> impl Strategy<Value = (RationalPoly, bool)> {
    (
        prop::collection::vec(nonneg_rational(), 0..=3),
        prop::collection::vec((nonneg_rational(), pos_rational()), 0..=2),
        0usize..4,
    )
        .prop_filter("nonconstant", |(r, q, _)| !r.is_empty() || !q.is_empty())
        .prop_map(|(reals, quads, flip)| {
            let mut f = RationalPoly::one();
            let mut stable = true;
            for (k, x) in reals.iter().enumerate() {
                let r = if flip == k && x.numer() != &0.into() {
                    stable = false;
                    -x.clone()
                } else {
                    x.clone()
                };
                f = &f * &RationalPoly::linear(r);
            }
            for (k, (re, im2)) in quads.iter().enumerate() {
                // (z + re)^2 + im2, roots -re +- i sqrt(im2)
                let mut re = re.clone();
                if flip == 3 && k == 0 && re != int(0) {
                    stable = false;
                    re = -re;
                }
                let c = &re * &re + im2;
                f = &f * &RationalPoly::new(vec![c, int(2) * re, int(1)]);
            }
            (f, stable)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_counts((roots, f) in factored()) {
        let iso = isolate_real_roots(&f).unwrap();
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(iso.distinct(), distinct.len());
        for (iv, r) in iso.intervals.iter().zip(&distinct) {
            prop_assert!(iv.is_exact());
            prop_assert_eq!(&iv.lo, r);
            prop_assert_eq!(iv.multiplicity, roots.iter().filter(|x| *x == r).count());
        }
    }
}

proptest! {
    #[test]
    fn interlacing_gives_positive_residues((p, q) in interlacing_pair(), c in pos_rational()) {
        let v = check_interlacing(&p, &q).unwrap();
        prop_assert!(v.is_s_function, "{:?}", v.violation);
        let pf = partial_fraction_residues(&c, &q, &p).unwrap();
        prop_assert!(pf.all_positive());
        prop_assert!(pf.constant >= int(0));
    }

    #[test]
    fn reciprocal_closure((p, q) in interlacing_pair()) {
        prop_assert!(check_interlacing(&p, &q).unwrap().is_s_function);
        let zp = &RationalPoly::monomial(int(1), 1) * &p;
        let v = check_interlacing(&q, &zp).unwrap();
        prop_assert!(v.is_s_function, "{:?}", v.violation);
    }

    #[test]
    fn swapped_pairs_are_rejected((p, q) in interlacing_pair()) {
        prop_assume!(p.degree().unwrap_or(0) > 0);
        prop_assert!(!check_interlacing(&q, &p).unwrap().is_s_function);
    }

    #[test]
    fn routh_agrees_with_construction((f, stable) in stability_instance()) {
        let r = routh_quasi_stability(&f).unwrap();
        prop_assert_eq!(r.quasi_stable, stable);
        prop_assert_eq!(quasi_stable_exact(&f).unwrap(), stable);
        if stable {
            let roots = approximate_roots(&f, 1e-9).unwrap();
            let worst = roots.iter().map(|r| r.z.re).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(worst < 1e-6);
        }
    }

    #[test]
    fn routh_agrees_with_hurwitz_window((f, stable) in stability_instance()) {
        let fw = poly_window(&f).padded(-12, 24).unwrap();
        let h = MatrixView::hurwitz_of(&fw).extract((1, 10), (1, 10)).unwrap();
        prop_assert_eq!(routh_quasi_stability(&f).unwrap().quasi_stable, stable);
        let v = check_tnn(&h, 4).unwrap();
        if stable || !v.is_nonnegative() {
            prop_assert_eq!(v.is_nonnegative(), stable, "witness {:?}", v.witness());
        } else {
            // the first negative minor can sit above order 4
            let deg = f.degree().unwrap();
            let full = check_tnn(&h, deg.min(10)).unwrap();
            prop_assert!(!full.is_nonnegative(), "no negative minor up to order {}", deg);
        }
    }
}

#[test]
fn imaginary_axis_factors() {
    // z^2 + 1/4 times (z + 1)
    let f = &RationalPoly::new(vec![ratio(1, 4), int(0), int(1)]) * &RationalPoly::from_ints(&[1, 1]);
    assert!(routh_quasi_stability(&f).unwrap().quasi_stable);
    let g = &f * &RationalPoly::new(vec![ratio(1, 4), int(0), int(1)]);
    assert!(routh_quasi_stability(&g).unwrap().quasi_stable);
}
