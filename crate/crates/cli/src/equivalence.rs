//! Interlacing versus total nonnegativity of `H(p, q)` and of the Toeplitz
//! matrices of the combinations `Ap + Bq`, `Aq + Bzp`.

use ghurwitz_core::analytic::{sample_im_nonneg, ComplexSampler, NumericReport, RationalFunction, Region};
use ghurwitz_core::laurent::{window_add, window_shift, LaurentWindow};
use ghurwitz_core::rational::{self, int, Rational};
use ghurwitz_core::realroots::{check_interlacing, partial_fraction_residues, PartialFractions, SVerdict};
use ghurwitz_core::structmat::{factorization_check, Bounds, MatrixView};
use ghurwitz_core::tnn::{check_tnn, detect_geometric_degeneracy, has_nonzero_minor_of_order, TnnVerdict};
use ghurwitz_core::{RationalPoly, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::generate::{chain, chain_pair, instance_rng, mutate, sample_seed, Mutation};
use crate::report::{HarnessReport, Instance, Outcome};

pub const THEOREM: &str = "interlacing_iff_hurwitz_tnn";

/// Order used for the Toeplitz matrices on the grid.
pub const TOEPLITZ_ORDER: usize = 3;

/// Order used while growing the window in search of a negative minor.
pub const SEARCH_ORDER: usize = 3;

const MUTATIONS: [Mutation; 4] = [Mutation::Swap, Mutation::Exchange, Mutation::Reflect, Mutation::Double];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Named,
    Interlacing,
    Mutant,
    Degenerate,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridFailure {
    pub a: String,
    pub b: String,
    pub matrix: &'static str,
    pub verdict: TnnVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceInstance {
    pub index: usize,
    pub origin: Origin,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
    /// Chain magnitudes the pair was built from, if generated.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<String>,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub expected_interlacing: Option<bool>,
    pub interlacing: Option<SVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residues: Option<PartialFractions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_sampler: Option<NumericReport>,
    pub hurwitz: Option<TnnVerdict>,
    /// Window sizes tried for `H(p, q)`, smallest first.
    pub windows: Vec<usize>,
    pub toeplitz_checked: usize,
    pub toeplitz_failures: Vec<GridFailure>,
    pub factorization: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<[String; 2]>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Instance for EquivalenceInstance {
    fn outcome(&self) -> Outcome {
        self.outcome
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

/// `p` written out with zeros on `[-reach, reach]`, so every entry of the
/// windows used below is stored.
fn window(p: &RationalPoly, reach: i64) -> Result<LaurentWindow> {
    LaurentWindow::polynomial(0, p.coeffs().to_vec()).padded(-reach, reach)
}

fn tnn_of(view: MatrixView, rows: (i64, i64), cols: (i64, i64), order: usize) -> Result<TnnVerdict> {
    let m = view.extract(rows, cols)?;
    check_tnn(&m, order.min(m.n_rows()).min(m.n_cols()))
}

/// `(a_1/a_0, b_0/a_0)` when the pair is geometric, `None` otherwise or
/// when the test does not apply.
fn degeneracy(p: &LaurentWindow, q: &LaurentWindow) -> Option<[String; 2]> {
    let p = p.padded(p.lo().min(0), p.hi().max(1)).ok()?;
    let q = q.padded(q.lo().min(0), q.hi().max(0)).ok()?;
    detect_geometric_degeneracy(&p, &q)
        .ok()
        .flatten()
        .map(|(r, s)| [rational::format(&r), rational::format(&s)])
}

struct Case {
    origin: Origin,
    mutation: Option<Mutation>,
    chain: Vec<Rational>,
    p: RationalPoly,
    q: RationalPoly,
    expected: bool,
}

fn named_cases() -> Vec<Case> {
    let case = |p: &[i64], q: &[i64], expected| Case {
        origin: Origin::Named,
        mutation: None,
        chain: Vec::new(),
        p: RationalPoly::from_ints(p),
        q: RationalPoly::from_ints(q),
        expected,
    };
    vec![case(&[8, 6, 1], &[3, 4, 1], true), case(&[3, 4, 1], &[2, 1], false)]
}

fn generated_case(cfg: &RunConfig, g: usize) -> Case {
    let mut rng = instance_rng(cfg.seed, 2 * g as u64);
    let c = chain(&mut rng);
    let (p, q) = chain_pair(&c);
    Case {
        origin: Origin::Interlacing,
        mutation: None,
        chain: c,
        p,
        q,
        expected: true,
    }
}

fn mutant_case(cfg: &RunConfig, m: usize) -> Case {
    let mut rng = instance_rng(cfg.seed, 2 * m as u64 + 1);
    let c = loop {
        let c = chain(&mut rng);
        if c.len() >= 2 {
            break c;
        }
    };
    let kind = MUTATIONS[m % MUTATIONS.len()];
    let (p, q) = mutate(&mut rng, &c, kind);
    Case {
        origin: Origin::Mutant,
        mutation: Some(kind),
        chain: c,
        p,
        q,
        expected: false,
    }
}

/// Geometric pair `a_k = 2^k`, `b_k = 3 * 2^k` on `[-3, 3]`; every order-2
/// minor of its Hurwitz-type matrix vanishes, so it is kept out of the
/// interlacing comparison.
fn degenerate_instance(index: usize) -> Result<EquivalenceInstance> {
    let pow = |k: i64| {
        if k >= 0 {
            int(1 << k)
        } else {
            Rational::new(1.into(), (1i64 << -k).into())
        }
    };
    let a: Vec<Rational> = (-3..=3).map(pow).collect();
    let b: Vec<Rational> = a.iter().map(|x| x * int(3)).collect();
    let p = LaurentWindow::exact(-3, a.clone());
    let q = LaurentWindow::exact(-3, b.clone());
    let found = detect_geometric_degeneracy(&p, &q)?;
    // rows 1..4, cols 0..3 only touch indices -2..=2
    let h = MatrixView::hurwitz_type(p, q).extract((1, 4), (0, 3))?;
    let rank_one = has_nonzero_minor_of_order(&h, 2)?.is_none();
    Ok(EquivalenceInstance {
        index,
        origin: Origin::Degenerate,
        mutation: None,
        chain: Vec::new(),
        p: strings(&a),
        q: strings(&b),
        expected_interlacing: None,
        interlacing: None,
        residues: None,
        im_sampler: None,
        hurwitz: None,
        windows: Vec::new(),
        toeplitz_checked: 0,
        toeplitz_failures: Vec::new(),
        factorization: None,
        degeneracy: found.as_ref().map(|(r, s)| [rational::format(r), rational::format(s)]),
        outcome: if rank_one && found.is_some() {
            Outcome::Skipped
        } else {
            Outcome::Fail
        },
        note: Some(if rank_one {
            "geometric pair: every order-2 minor vanishes; excluded from the comparison".into()
        } else {
            "geometric pair has a nonzero order-2 minor".into()
        }),
    })
}

/// Growing square windows `1..=n` up to the cap for a negative minor.
fn search_witness(
    p: &LaurentWindow,
    q: &LaurentWindow,
    cfg: &RunConfig,
    start: usize,
) -> Result<(TnnVerdict, Vec<usize>)> {
    let cap = cfg.cap_window.max(start);
    let h = |n: usize, order: usize| {
        tnn_of(
            MatrixView::hurwitz_type(p.clone(), q.clone()),
            (1, n as i64),
            (1, n as i64),
            order,
        )
    };
    let mut sizes = vec![start];
    let mut v = h(start, SEARCH_ORDER)?;
    while v.is_nonnegative() && *sizes.last().expect("nonempty") < cap {
        let n = (sizes.last().expect("nonempty") + 4).min(cap);
        sizes.push(n);
        v = h(n, SEARCH_ORDER)?;
    }
    if v.is_nonnegative() && cfg.max_order > SEARCH_ORDER {
        v = h(cap, cfg.max_order)?;
    }
    Ok((v, sizes))
}

fn run_case(cfg: &RunConfig, index: usize, case: Case) -> Result<EquivalenceInstance> {
    let (rows, cols) = cfg.square_window(8);
    let side = (rows.1 - rows.0 + 1)
        .max(cols.1 - cols.0 + 1)
        .max(cfg.cap_window as i64);
    let reach = 2 * (side + rows.0.abs().max(cols.0.abs())) + 2;
    let (pw, qw) = (window(&case.p, reach)?, window(&case.q, reach)?);
    let s = check_interlacing(&case.p, &case.q)?;

    let f = RationalFunction::new(int(1), case.q.clone(), case.p.clone());
    let uhp = ComplexSampler::new(Region::UpperHalfPlane, cfg.samples, sample_seed(cfg.seed, index));
    let im = sample_im_nonneg(&f, &uhp, cfg.tol)?;

    let mut inst = EquivalenceInstance {
        index,
        origin: case.origin,
        mutation: case.mutation,
        chain: strings(&case.chain),
        p: strings(case.p.coeffs()),
        q: strings(case.q.coeffs()),
        expected_interlacing: Some(case.expected),
        interlacing: Some(s.clone()),
        residues: None,
        im_sampler: Some(im.clone()),
        hurwitz: None,
        windows: Vec::new(),
        toeplitz_checked: 0,
        toeplitz_failures: Vec::new(),
        factorization: None,
        degeneracy: degeneracy(&pw, &qw),
        outcome: Outcome::Fail,
        note: None,
    };
    if inst.degeneracy.is_some() {
        inst.outcome = Outcome::Skipped;
        inst.note = Some("geometric pair: excluded from the comparison".into());
        return Ok(inst);
    }

    let bounds = Bounds::new(rows, cols);
    let mut factorization = true;
    for a in &cfg.grid {
        for b in &cfg.grid {
            factorization &= factorization_check(&pw, &qw, a, b, bounds)?;
        }
    }
    inst.factorization = Some(factorization);

    if s.is_s_function {
        let order = cfg
            .max_order
            .min((rows.1 - rows.0 + 1) as usize)
            .min((cols.1 - cols.0 + 1) as usize);
        let h = tnn_of(MatrixView::hurwitz_type(pw.clone(), qw.clone()), rows, cols, order)?;
        inst.windows.push((rows.1 - rows.0 + 1) as usize);
        let residues = if case.p.degree() == Some(0) && case.q.degree() == Some(0) {
            None
        } else {
            Some(partial_fraction_residues(&int(1), &case.q, &case.p)?)
        };
        let pt = window_shift(&pw);
        for a in &cfg.grid {
            for b in &cfg.grid {
                for (name, first, second) in [("T(Ap+Bq)", &pw, &qw), ("T(Aq+Bzp)", &qw, &pt)] {
                    let t = MatrixView::toeplitz(window_add(first, second, a, b)?);
                    let v = tnn_of(t, rows, cols, TOEPLITZ_ORDER)?;
                    inst.toeplitz_checked += 1;
                    if !v.is_nonnegative() {
                        inst.toeplitz_failures.push(GridFailure {
                            a: rational::format(a),
                            b: rational::format(b),
                            matrix: name,
                            verdict: v,
                        });
                    }
                }
            }
        }
        let residues_ok = residues.as_ref().is_none_or(PartialFractions::all_positive);
        let ok = case.expected
            && h.is_nonnegative()
            && residues_ok
            && im.pass
            && inst.toeplitz_failures.is_empty()
            && factorization;
        inst.outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        if !case.expected {
            inst.note = Some("generator produced an interlacing pair where a mutant was expected".into());
        }
        inst.hurwitz = Some(h);
        inst.residues = residues;
    } else {
        let start = (rows.1 - rows.0 + 1).max(1) as usize;
        let (h, sizes) = search_witness(&pw, &qw, cfg, start)?;
        inst.windows = sizes;
        inst.outcome = match (case.expected, h.is_nonnegative()) {
            (true, _) => Outcome::Fail,
            (false, false) if factorization => Outcome::Pass,
            (false, false) => Outcome::Fail,
            (false, true) => Outcome::Inconclusive,
        };
        if inst.outcome == Outcome::Inconclusive {
            inst.note = Some(format!(
                "no negative minor up to order {} in the {}x{} window",
                h.order_checked, cfg.cap_window, cfg.cap_window
            ));
        }
        inst.hurwitz = Some(h);
    }
    Ok(inst)
}

/// Runs the named instances, the geometric exclusion, `count` interlacing
/// pairs and `count` mutants. Instance `i` depends only on the seed and `i`.
pub fn equivalence_suite(cfg: &RunConfig) -> Result<HarnessReport<EquivalenceInstance>> {
    cfg.validate()?;
    let named = named_cases();
    let n_named = named.len();
    let mut head: Vec<EquivalenceInstance> = named
        .into_par_iter()
        .enumerate()
        .map(|(i, c)| run_case(cfg, i, c))
        .collect::<Result<_>>()?;
    head.push(degenerate_instance(n_named)?);
    let offset = head.len();
    let rest: Vec<EquivalenceInstance> = (0..2 * cfg.count)
        .into_par_iter()
        .map(|k| {
            let case = if k < cfg.count {
                generated_case(cfg, k)
            } else {
                mutant_case(cfg, k - cfg.count)
            };
            run_case(cfg, offset + k, case)
        })
        .collect::<Result<_>>()?;
    head.extend(rest);
    Ok(HarnessReport::new(THEOREM, cfg.clone(), head))
}
