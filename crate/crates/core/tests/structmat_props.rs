mod common;

use common::*;
use ghurwitz_core::laurent::split_even_odd;
use ghurwitz_core::rational::{int, ratio};
use ghurwitz_core::structmat::{factorization_check, mask_product_entry, Bounds, MatrixView};
use proptest::prelude::*;

fn grid() -> Vec<ghurwitz_core::Rational> {
    vec![int(0), ratio(1, 2), int(1), int(2)]
}

proptest! {
    #[test]
    fn toeplitz_constancy(f in window(-3..=0, 8)) {
        let f = f.padded(-12, 12).unwrap();
        let t = MatrixView::toeplitz(f.clone()).extract((-2, 4), (-2, 4)).unwrap();
        for i in -2..=4i64 {
            for j in -2..=4i64 {
                prop_assert_eq!(t.at(i, j).unwrap(), f.get(j - i).unwrap());
            }
        }
    }

    #[test]
    fn mask_identity(p in window(-2..=1, 5), q in window(-2..=1, 5), ai in 0usize..4, bi in 0usize..4) {
        let (p, q) = (p.padded(-10, 10).unwrap(), q.padded(-10, 10).unwrap());
        let (a, b) = (grid()[ai].clone(), grid()[bi].clone());
        prop_assert!(factorization_check(&p, &q, &a, &b, Bounds::new((1, 3), (1, 5))).unwrap());

        // the same entries through the explicit finite product
        let mask = MatrixView::two_band(a.clone(), b.clone());
        let h = MatrixView::hurwitz_type(p.clone(), q.clone());
        let sum = ghurwitz_core::laurent::window_add(&p, &q, &a, &b).unwrap();
        let t = MatrixView::toeplitz(sum);
        for i in 1..=3 {
            for j in 1..=5 {
                let via = mask_product_entry(&mask, &h, i, j, (1, 6)).unwrap();
                prop_assert_eq!(via, t.entry(i, j).unwrap());
            }
        }
    }

    #[test]
    fn generalized_m2_is_hurwitz_of_split(f in window(-4..=2, 10)) {
        let f = f.padded(-20, 20).unwrap();
        let (p, q) = split_even_odd(&f);
        let h = MatrixView::hurwitz_type(p, q);
        let g = MatrixView::generalized_with_offset(f, 2, 1).unwrap();
        let (a, b) = (h.extract((-2, 5), (-2, 5)).unwrap(), g.extract((-2, 5), (-2, 5)).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn extraction_is_pure(f in window(-3..=3, 6)) {
        let f = f.padded(-12, 12).unwrap();
        let v = MatrixView::generalized(f, 3).unwrap();
        prop_assert_eq!(v.extract((1, 3), (1, 4)).unwrap(), v.extract((1, 3), (1, 4)).unwrap());
    }
}

#[test]
fn missing_coefficients_are_errors() {
    let f = ghurwitz_core::LaurentWindow::exact(0, vec![int(1), int(2), int(1)]);
    assert!(MatrixView::toeplitz(f).extract((1, 2), (1, 3)).is_err());
}
