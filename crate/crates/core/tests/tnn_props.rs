mod common;

use common::*;
use ghurwitz_core::rational::int;
use ghurwitz_core::structmat::{MatrixView, WindowMatrix};
use ghurwitz_core::tnn::{check_tnn, detect_geometric_degeneracy, exact_det, has_nonzero_minor_of_order, TnnStatus};
use ghurwitz_core::{LaurentWindow, Rational};
use proptest::prelude::*;

fn int_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(prop::collection::vec((-9i64..=9).prop_map(int), n), n))
}

fn small_nonneg(rows: usize, cols: usize) -> impl Strategy<Value = WindowMatrix> {
    prop::collection::vec(prop::collection::vec((0i64..=4).prop_map(int), cols), rows)
        .prop_map(|e| WindowMatrix::from_rows(1, 1, e).unwrap())
}

fn sub_block(m: &WindowMatrix, r: (i64, i64), c: (i64, i64)) -> WindowMatrix {
    let rows: Vec<i64> = (r.0..=r.1).collect();
    let cols: Vec<i64> = (c.0..=c.1).collect();
    WindowMatrix::from_rows(r.0, c.0, m.submatrix(&rows, &cols).unwrap()).unwrap()
}

fn h_window(p: &LaurentWindow, q: &LaurentWindow, rows: (i64, i64), cols: (i64, i64)) -> WindowMatrix {
    MatrixView::hurwitz_type(p.clone(), q.clone())
        .extract(rows, cols)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn det_matches_cofactor_oracle(m in int_matrix(6)) {
        prop_assert_eq!(exact_det(&m).unwrap(), cofactor_det(&m));
    }
}

proptest! {
    #[test]
    fn det_with_fractions(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(rational(), n), n))) {
        prop_assert_eq!(exact_det(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn monotone_consistency(m in small_nonneg(4, 5), k in 1usize..=4) {
        let v = check_tnn(&m, k).unwrap();
        if let TnnStatus::NegativeMinorFound(w) = &v.status {
            prop_assert!(w.value < int(0));
            for k2 in k..=4 {
                let v2 = check_tnn(&m, k2).unwrap();
                prop_assert_eq!(v2.witness(), Some(w));
            }
        }
    }

    #[test]
    fn submatrix_consistency((p, q) in interlacing_pair(), r0 in 1i64..=3, c0 in 1i64..=3) {
        let (p, q) = (poly_window(&p).padded(-8, 14).unwrap(), poly_window(&q).padded(-8, 14).unwrap());
        let h = h_window(&p, &q, (1, 6), (1, 6));
        let v = check_tnn(&h, 3).unwrap();
        prop_assert_eq!(&v.status, &TnnStatus::NonnegativeUpTo(3));
        let sub = sub_block(&h, (r0, r0 + 3), (c0, c0 + 3));
        prop_assert!(check_tnn(&sub, 3).unwrap().is_nonnegative());
    }

    #[test]
    fn submatrix_consistency_random(m in small_nonneg(5, 5), r0 in 1i64..=3, c0 in 1i64..=3) {
        let v = check_tnn(&m, 2).unwrap();
        if v.is_nonnegative() {
            let sub = sub_block(&m, (r0, r0 + 2), (c0, c0 + 2));
            prop_assert!(check_tnn(&sub, 2).unwrap().is_nonnegative());
        }
    }

    #[test]
    fn degeneracy_equivalence(
        a0 in rational().prop_filter("nonzero", |x| *x != int(0)),
        r in rational(),
        s in rational(),
        geometric in any::<bool>(),
        noise in prop::collection::vec(rational(), 8),
    ) {
        let (a, b): (Vec<Rational>, Vec<Rational>) = if geometric {
            let a: Vec<Rational> = (0..4).map(|k| &a0 * num_traits::pow(r.clone(), k)).collect();
            let b = a.iter().map(|x| &s * x).collect();
            (a, b)
        } else {
            let mut a = noise[..4].to_vec();
            a[0] = a0.clone();
            (a, noise[4..].to_vec())
        };
        let p = LaurentWindow::exact(0, a);
        let q = LaurentWindow::exact(0, b);
        // rows 1..4, cols 2..4 touch exactly the stored indices 0..3
        let h = h_window(&p, &q, (1, 4), (2, 4));
        let all_zero = has_nonzero_minor_of_order(&h, 2).unwrap().is_none();
        let found = detect_geometric_degeneracy(&p, &q).unwrap();
        prop_assert_eq!(found.is_some(), all_zero);
        if geometric {
            prop_assert_eq!(found, Some((r, s)));
        }
    }

    #[test]
    fn nonzero_minor_passes_to_toeplitz((p, q) in interlacing_pair()) {
        let (pw, qw) = (poly_window(&p).padded(-8, 14).unwrap(), poly_window(&q).padded(-8, 14).unwrap());
        let h = h_window(&pw, &qw, (1, 6), (1, 6));
        prop_assert!(check_tnn(&h, 2).unwrap().is_nonnegative());
        if has_nonzero_minor_of_order(&h, 2).unwrap().is_some() {
            let t = MatrixView::toeplitz(pw).extract((1, 6), (1, 6)).unwrap();
            prop_assert!(has_nonzero_minor_of_order(&t, 2).unwrap().is_some());
        }
    }
}

#[test]
fn geometric_instance_on_minus_three_to_three() {
    let pow2 = |k: i64| {
        if k >= 0 {
            int(1 << k)
        } else {
            ghurwitz_core::rational::ratio(1, 1 << -k)
        }
    };
    let p = LaurentWindow::exact(-3, (-3..=3).map(pow2).collect());
    let q = LaurentWindow::exact(-3, (-3..=3).map(|k| int(3) * pow2(k)).collect());
    assert_eq!(detect_geometric_degeneracy(&p, &q).unwrap(), Some((int(2), int(3))));
    let h = h_window(&p, &q, (1, 6), (0, 4));
    assert!(has_nonzero_minor_of_order(&h, 2).unwrap().is_none());
}
