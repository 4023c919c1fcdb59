//! Zero-free sectors from total nonnegativity of the pairwise matrices
//! `H(p_m, p_n)` of an M-way split.

use ghurwitz_core::analytic::{sector_check, SectorReport};
use ghurwitz_core::laurent::{split_m_way, LaurentWindow};
use ghurwitz_core::rational;
use ghurwitz_core::structmat::MatrixView;
use ghurwitz_core::tnn::{check_tnn, has_nonzero_minor_of_order, TnnVerdict};
use ghurwitz_core::{Error, RationalPoly, Result};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::generate::{instance_rng, sector_instance};
use crate::report::{HarnessReport, Instance, Outcome};

pub const THEOREM: &str = "split_tnn_implies_zero_free_sector";

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub m: usize,
    pub n: usize,
    pub cols: (i64, i64),
    pub verdict: TnnVerdict,
    pub nonzero_order_two: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorInstance {
    pub index: usize,
    pub named: bool,
    #[serde(rename = "M")]
    pub m: usize,
    pub lo: i64,
    pub f: Vec<String>,
    pub pairs: Vec<PairVerdict>,
    /// `None` when the premise was not evaluated.
    pub premise: Option<bool>,
    pub sector: SectorReport,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Instance for SectorInstance {
    fn outcome(&self) -> Outcome {
        self.outcome
    }
}

fn named() -> Vec<(usize, i64, RationalPoly)> {
    let binom6 = RationalPoly::from_ints(&[1, 6, 15, 20, 15, 6, 1]);
    vec![
        (3, 0, binom6),
        (3, 0, RationalPoly::from_ints(&[1, 0, 0, 1])),
        (2, 0, RationalPoly::from_ints(&[-1, 1])),
        (3, 5, RationalPoly::one()),
    ]
}

/// `H(p_m, p_n)` on `rows`, with columns starting where the first stored
/// coefficient of either part lands in row 1.
fn pair_verdict(parts: &[LaurentWindow], m: usize, n: usize, size: usize, order: usize) -> Result<PairVerdict> {
    let (a, b) = (&parts[m], &parts[n]);
    let start = [a, b]
        .iter()
        .filter(|w| !w.is_empty())
        .map(|w| w.lo())
        .min()
        .unwrap_or(0)
        + 1;
    let cols = (start, start + size as i64 - 1);
    let reach = (cols.0 - size as i64 - 1, cols.1 + 1);
    let (a, b) = (a.padded(reach.0, reach.1)?, b.padded(reach.0, reach.1)?);
    let h = MatrixView::hurwitz_type(a, b).extract((1, size as i64), cols)?;
    let verdict = check_tnn(&h, order.min(size))?;
    let nonzero_order_two = size >= 2 && has_nonzero_minor_of_order(&h, 2)?.is_some();
    Ok(PairVerdict {
        m,
        n,
        cols,
        verdict,
        nonzero_order_two,
    })
}

fn run_instance(
    cfg: &RunConfig,
    index: usize,
    named: bool,
    m: usize,
    lo: i64,
    f: RationalPoly,
) -> Result<SectorInstance> {
    if m < 2 {
        return Err(Error::Domain("sector suite needs M >= 2".into()));
    }
    let fw = LaurentWindow::polynomial(lo, f.coeffs().to_vec());
    let sector = sector_check(&fw, m, cfg.tol)?;
    let terms = fw.coeffs().iter().filter(|c| !c.is_zero()).count();
    let mut inst = SectorInstance {
        index,
        named,
        m,
        lo,
        f: fw.coeffs().iter().map(rational::format).collect(),
        pairs: Vec::new(),
        premise: None,
        sector,
        outcome: Outcome::Skipped,
        note: None,
    };
    if terms <= 1 {
        inst.note = Some("monomial: every split part but one is zero and there are no zeros to locate".into());
        return Ok(inst);
    }
    let parts = split_m_way(&fw, m)?;
    let size = cfg.rows.map_or(8, |(a, b)| (b - a + 1) as usize);
    for hi in 1..m {
        for lo_part in 0..hi {
            inst.pairs.push(pair_verdict(&parts, hi, lo_part, size, cfg.max_order)?);
        }
    }
    let premise =
        inst.pairs.iter().all(|p| p.verdict.is_nonnegative()) && inst.pairs.iter().any(|p| p.nonzero_order_two);
    inst.premise = Some(premise);
    inst.outcome = match (premise, inst.sector.pass) {
        (true, true) => Outcome::Pass,
        (true, false) => Outcome::Fail,
        (false, _) => Outcome::PremiseFail,
    };
    Ok(inst)
}

pub fn sector_suite(cfg: &RunConfig) -> Result<HarnessReport<SectorInstance>> {
    cfg.validate()?;
    if cfg.m < 2 {
        return Err(Error::Domain("sector suite needs M >= 2".into()));
    }
    let named = named();
    let offset = named.len();
    let mut out: Vec<SectorInstance> = named
        .into_par_iter()
        .enumerate()
        .map(|(i, (m, lo, f))| run_instance(cfg, i, true, m, lo, f))
        .collect::<Result<_>>()?;
    let rest: Vec<SectorInstance> = (0..cfg.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = instance_rng(cfg.seed, k as u64);
            let (lo, f) = sector_instance(&mut rng);
            run_instance(cfg, offset + k, false, cfg.m, lo, f)
        })
        .collect::<Result<_>>()?;
    out.extend(rest);
    Ok(HarnessReport::new(THEOREM, cfg.clone(), out))
}
