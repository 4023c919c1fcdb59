mod common;

use common::*;
use ghurwitz_core::analytic::{
    approximate_roots, check_modulus_inequality, check_rhp_mapping, sample_im_nonneg, ComplexSampler, RationalFunction,
    Region, DEFAULT_TOL,
};
use ghurwitz_core::laurent::split_even_odd;
use ghurwitz_core::rational::int;
use ghurwitz_core::RationalPoly;
use num_complex::Complex64;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(rational(), 1..=max_deg + 1)
        .prop_map(RationalPoly::new)
        .prop_filter("nonconstant", |p| p.degree().unwrap_or(0) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugate_symmetry(q in poly(4), p in poly(4), c in pos_rational(), seed in 0u64..1000) {
        let f = RationalFunction::new(c, q, p);
        for z in ComplexSampler::new(Region::UpperHalfPlane, 64, seed).samples() {
            if let (Some(a), Some(b)) = (f.eval(z.conj()), f.eval(z)) {
                prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
            }
        }
    }

    #[test]
    fn modulus_forms_agree(f in poly(6), seed in 0u64..1000) {
        let s = ComplexSampler::new(Region::RightHalfPlane, 300, seed);
        let r = check_modulus_inequality(&poly_window(&f), &s, DEFAULT_TOL).unwrap();
        prop_assert!(r.agree);
    }

    #[test]
    fn accepted_pairs_pass_samplers((p, q) in interlacing_pair(), seed in 0u64..1000) {
        let f = RationalFunction::new(int(1), q.clone(), p.clone());
        let uhp = ComplexSampler::new(Region::UpperHalfPlane, 1000, seed);
        prop_assert!(sample_im_nonneg(&f, &uhp, DEFAULT_TOL).unwrap().pass);

        let h = poly_window(&hurwitz_poly(&p, &q));
        let rhp = ComplexSampler::new(Region::RightHalfPlane, 1000, seed);
        prop_assert!(check_modulus_inequality(&h, &rhp, DEFAULT_TOL).unwrap().pass);
        let (po, qe) = split_even_odd(&h);
        prop_assert!(check_rhp_mapping(&po, &qe, &rhp, DEFAULT_TOL).unwrap().pass);
    }

    #[test]
    fn root_residuals(f in poly(8)) {
        let roots = approximate_roots(&f, 1e-9).unwrap();
        prop_assert_eq!(roots.len(), f.degree().unwrap());
        for r in &roots {
            prop_assert!(r.residual <= 1e-9, "residual {}", r.residual);
        }
        // Vieta: the roots reproduce the normalized second-highest coefficient
        let n = f.degree().unwrap();
        let sum: Complex64 = roots.iter().map(|r| r.z).sum();
        let want = -ghurwitz_core::rational::to_f64(&(f.coeff(n - 1) / f.lead()));
        prop_assert!((sum.re - want).abs() < 1e-6 * (1.0 + want.abs()) && sum.im.abs() < 1e-6 * (1.0 + want.abs()));
    }
}
