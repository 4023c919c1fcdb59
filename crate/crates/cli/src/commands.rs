//! The single-shot subcommands: `build`, `check-tnn`, `check-s`.

use std::path::Path;

use ghurwitz_core::analytic::{sample_im_nonneg, ComplexSampler, RationalFunction, Region};
use ghurwitz_core::rational::int;
use ghurwitz_core::realroots::{check_interlacing, partial_fraction_residues};
use ghurwitz_core::spec::{parse_polynomial, MatrixSpec, OneOrMany, SeriesSpec, WindowMatrixJson};
use ghurwitz_core::structmat::{MatrixView, WindowMatrix};
use ghurwitz_core::tnn::{check_tnn, default_max_order};
use ghurwitz_core::{Error, RationalPoly};
use serde_json::{json, Value};

use crate::config::{Mode, RunConfig};
use crate::{CliError, Output, EXIT_NEGATIVE, EXIT_PASS};

pub(crate) fn read_json(path: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{path}: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(path: &str, v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::input(format!("{path}: {e}")))
}

/// Largest tail bound over the windows backing `view`; `None` when all are exact.
fn inexactness(view: &MatrixView) -> Option<f64> {
    let windows = match view {
        MatrixView::Toeplitz(f) | MatrixView::GeneralizedHurwitz { f, .. } => vec![f],
        MatrixView::HurwitzType { p, q } => vec![p, q],
        MatrixView::TwoBandMask { .. } => vec![],
    };
    windows
        .iter()
        .filter(|w| !w.is_exact())
        .map(|w| w.tail_bound().unwrap_or(f64::INFINITY))
        .reduce(f64::max)
}

struct Built {
    matrix: WindowMatrix,
    padded: Option<bool>,
    tail_bound: Option<f64>,
}

/// Reads the inputs as a window matrix, a matrix spec, or bare series
/// combined with `--kind`.
fn matrix_from_inputs(cfg: &RunConfig, allow_matrix: bool) -> Result<Built, CliError> {
    let first = cfg.inputs.first().ok_or_else(|| CliError::input("no --input given"))?;
    let v = read_json(first)?;
    if v.get("entries").is_some() {
        if !allow_matrix {
            return Err(CliError::input(format!("{first}: already a window matrix")));
        }
        let m: WindowMatrixJson = parse(first, v)?;
        return Ok(Built {
            matrix: m.to_matrix()?,
            padded: m.padded,
            tail_bound: None,
        });
    }
    let mut spec: MatrixSpec = if v.get("series").is_some() {
        parse(first, v)?
    } else {
        let kind = cfg
            .kind
            .ok_or_else(|| CliError::input("bare series inputs need --kind"))?;
        let series = cfg
            .inputs
            .iter()
            .map(|p| parse::<SeriesSpec>(p, read_json(p)?))
            .collect::<Result<Vec<_>, _>>()?;
        let series = if series.len() == 1 {
            OneOrMany::One(series.into_iter().next().expect("one"))
        } else {
            OneOrMany::Many(series)
        };
        MatrixSpec {
            kind,
            series,
            m: None,
            row_offset: None,
        }
    };
    if spec.m.is_none() {
        spec.m = Some(cfg.m);
    }
    if cfg.row_offset.is_some() {
        spec.row_offset = cfg.row_offset;
    }
    let rows = cfg.rows.ok_or_else(|| CliError::input("--rows is required"))?;
    let cols = cfg.cols.ok_or_else(|| CliError::input("--cols is required"))?;
    let (view, padded) = spec.view_for(rows, cols, cfg.exp_terms)?;
    let tail_bound = inexactness(&view);
    if tail_bound.is_some() && cfg.mode == Mode::Exact {
        return Err(Error::InsufficientData(
            "the window is truncated from an infinite expansion; rerun with --mode approx".into(),
        )
        .into());
    }
    Ok(Built {
        matrix: view.extract(rows, cols)?,
        padded: Some(padded),
        tail_bound,
    })
}

fn with_tail(mut v: Value, tail_bound: Option<f64>) -> Value {
    if let (Some(t), Some(obj)) = (tail_bound, v.as_object_mut()) {
        obj.insert("tail_bound".into(), json!(t));
    }
    v
}

pub fn build(cfg: &RunConfig) -> Result<Output, CliError> {
    let b = matrix_from_inputs(cfg, false)?;
    let v = serde_json::to_value(WindowMatrixJson::from_matrix(&b.matrix, b.padded)).expect("serializable");
    Ok(Output::new(with_tail(v, b.tail_bound), EXIT_PASS))
}

pub fn check_tnn_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let b = matrix_from_inputs(cfg, true)?;
    let order = if cfg.max_order == 0 {
        default_max_order(&b.matrix)
    } else {
        cfg.max_order
    };
    let verdict = check_tnn(&b.matrix, order)?;
    let mut v = serde_json::to_value(&verdict).expect("serializable");
    if let (Some(p), Some(obj)) = (b.padded, v.as_object_mut()) {
        obj.insert("padded".into(), json!(p));
    }
    let code = if verdict.is_nonnegative() {
        EXIT_PASS
    } else {
        EXIT_NEGATIVE
    };
    Ok(Output::new(with_tail(v, b.tail_bound), code))
}

fn polynomial(path: &str) -> Result<RationalPoly, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    Ok(parse_polynomial(&text)?)
}

/// `F = q / p` from `--input p --input q`. Exact mode certifies through the
/// root chain and partial fractions; both modes run the upper half-plane
/// sampler.
pub fn check_s(cfg: &RunConfig) -> Result<Output, CliError> {
    let [p_path, q_path] = &cfg.inputs[..] else {
        return Err(CliError::input("check-s needs --input P --input Q"));
    };
    let (p, q) = (polynomial(p_path)?, polynomial(q_path)?);
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("p and q must be nonzero".into()).into());
    }
    let sampler = ComplexSampler::new(Region::UpperHalfPlane, cfg.samples, cfg.seed);
    let numeric = sample_im_nonneg(&RationalFunction::new(int(1), q.clone(), p.clone()), &sampler, cfg.tol)?;
    let mut out = json!({ "sampler": numeric });
    let pass = if cfg.mode == Mode::Exact {
        let verdict = check_interlacing(&p, &q)?;
        if verdict.is_s_function {
            let g = p.gcd(&q);
            let (pr, qr) = (p.div_exact(&g)?, q.div_exact(&g)?);
            out["residues"] =
                serde_json::to_value(partial_fraction_residues(&int(1), &qr, &pr)?).expect("serializable");
        }
        out["agree"] = json!(verdict.is_s_function == numeric.pass);
        let ok = verdict.is_s_function && numeric.pass;
        out["s_verdict"] = serde_json::to_value(&verdict).expect("serializable");
        ok
    } else {
        numeric.pass
    };
    out["pass"] = json!(pass);
    Ok(Output::new(out, if pass { EXIT_PASS } else { EXIT_NEGATIVE }))
}
