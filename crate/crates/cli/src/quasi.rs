//! Routh versus the Hurwitz matrix of `f(z) = q(z^2) + z p(z^2)`, with the
//! modulus and half-plane mapping falsifiers alongside.

use ghurwitz_core::analytic::{
    check_modulus_inequality, check_rhp_mapping, ComplexSampler, ModulusReport, NumericReport, Region,
};
use ghurwitz_core::laurent::{split_even_odd, LaurentWindow};
use ghurwitz_core::rational;
use ghurwitz_core::realroots::{routh_quasi_stability, RouthReport};
use ghurwitz_core::structmat::MatrixView;
use ghurwitz_core::tnn::{check_tnn, TnnVerdict};
use ghurwitz_core::{RationalPoly, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::generate::{instance_rng, sample_seed, stability_instance};
use crate::report::{HarnessReport, Instance, Outcome};

pub const THEOREM: &str = "quasi_stable_iff_hurwitz_tnn";

pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct QuasiInstance {
    pub index: usize,
    pub named: bool,
    pub factors: Vec<String>,
    pub f: Vec<String>,
    pub constructed_quasi_stable: bool,
    pub routh: RouthReport,
    pub hurwitz: TnnVerdict,
    pub modulus: ModulusReport,
    pub rhp_mapping: NumericReport,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

impl Instance for QuasiInstance {
    fn outcome(&self) -> Outcome {
        self.outcome
    }
}

fn named() -> Vec<(Vec<String>, RationalPoly, bool)> {
    vec![
        (
            vec!["z + 1".into(), "z^2 + z + 1".into()],
            RationalPoly::from_ints(&[1, 2, 2, 1]),
            true,
        ),
        (vec!["z^2 - z + 1".into()], RationalPoly::from_ints(&[1, -1, 1]), false),
        (
            vec!["z".into(), "z^2 + 1".into()],
            RationalPoly::from_ints(&[0, 1, 0, 1]),
            true,
        ),
    ]
}

fn run_instance(
    cfg: &RunConfig,
    index: usize,
    named: bool,
    factors: Vec<String>,
    f: RationalPoly,
    stable: bool,
) -> Result<QuasiInstance> {
    let (rows, cols) = cfg.square_window(10);
    let reach = 4 * (rows.1.abs().max(cols.1.abs()).max(rows.0.abs()).max(cols.0.abs()) + 1);
    let fw = LaurentWindow::polynomial(0, f.coeffs().to_vec()).padded(-reach, reach)?;
    let routh = routh_quasi_stability(&f)?;
    let h = MatrixView::hurwitz_of(&fw).extract(rows, cols)?;
    let hurwitz = check_tnn(&h, cfg.max_order.min(h.n_rows()).min(h.n_cols()))?;

    let rhp = ComplexSampler::new(Region::RightHalfPlane, cfg.samples, sample_seed(cfg.seed, index));
    let modulus = check_modulus_inequality(&fw, &rhp, cfg.tol)?;
    let (p, q) = split_even_odd(&fw);
    let rhp_mapping = check_rhp_mapping(&p, &q, &rhp, cfg.tol)?;

    let mut problems = Vec::new();
    if routh.quasi_stable != stable {
        problems.push("routh verdict differs from the construction".to_string());
    }
    if routh.quasi_stable != hurwitz.is_nonnegative() {
        problems.push("routh verdict differs from the Hurwitz window".to_string());
    }
    if stable && !(modulus.pass && rhp_mapping.pass) {
        problems.push("sampler rejected a quasi-stable polynomial".to_string());
    }
    if !stable && (modulus.pass || rhp_mapping.pass) {
        problems.push("no violating sample for a polynomial with a right half-plane root".to_string());
    }
    if !modulus.agree {
        problems.push("direct and Mobius modulus forms disagree".to_string());
    }
    Ok(QuasiInstance {
        index,
        named,
        factors,
        f: f.coeffs().iter().map(rational::format).collect(),
        constructed_quasi_stable: stable,
        routh,
        hurwitz,
        modulus,
        rhp_mapping,
        outcome: if problems.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        problems,
    })
}

/// Named instances followed by `count` generated ones; even-numbered
/// generated instances are quasi-stable by construction, odd ones have one
/// factor reflected into the right half-plane.
pub fn quasi_stability_suite(cfg: &RunConfig) -> Result<HarnessReport<QuasiInstance>> {
    cfg.validate()?;
    let named = named();
    let offset = named.len();
    let mut out: Vec<QuasiInstance> = named
        .into_par_iter()
        .enumerate()
        .map(|(i, (d, f, s))| run_instance(cfg, i, true, d, f, s))
        .collect::<Result<_>>()?;
    let rest: Vec<QuasiInstance> = (0..cfg.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = instance_rng(cfg.seed, k as u64);
            let stable = k % 2 == 0;
            let (f, d) = stability_instance(&mut rng, MAX_DEGREE, !stable);
            run_instance(cfg, offset + k, false, d, f, stable)
        })
        .collect::<Result<_>>()?;
    out.extend(rest);
    Ok(HarnessReport::new(THEOREM, cfg.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;

    #[test]
    fn named_polynomials() {
        let mut cfg = RunConfig::new(Command::QuasiStability);
        cfg.count = 4;
        cfg.samples = 300;
        let r = quasi_stability_suite(&cfg).unwrap();
        assert!(r.pass, "{}", r.to_json());
        assert!(r.instances[0].hurwitz.is_nonnegative());
        assert!(!r.instances[1].hurwitz.is_nonnegative());
        assert!(r.instances[2].routh.quasi_stable);
    }
}
