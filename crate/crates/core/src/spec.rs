//! JSON formats for series, matrices, polynomials and windows.
//!
//! Rationals are written as base-10 strings `"p/q"` or `"p"`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{generate_product_form, split_even_odd, FactorSpec, LaurentWindow};
use crate::poly::RationalPoly;
use crate::rational::{self, Rational};
use crate::structmat::{MatrixView, WindowMatrix};

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| rational::parse(s)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

fn one() -> String {
    "1".into()
}

fn zero() -> String {
    "0".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorsJson {
    #[serde(rename = "C", default = "one")]
    pub c: String,
    #[serde(default)]
    pub j: i64,
    #[serde(rename = "A", default = "zero")]
    pub a: String,
    #[serde(rename = "A0", default = "zero")]
    pub a0: String,
    #[serde(default)]
    pub pos_zeros: Vec<String>,
    #[serde(default)]
    pub pos_poles: Vec<String>,
    #[serde(default)]
    pub neg_zeros: Vec<String>,
    #[serde(default)]
    pub neg_poles: Vec<String>,
    #[serde(default)]
    pub zero_at_origin: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeriesSpec {
    /// Finitely supported: coefficients outside `lo..lo+len` are zero.
    Explicit {
        lo: i64,
        coeffs: Vec<String>,
    },
    Factors(FactorsJson),
}

impl SeriesSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn explicit(w: &LaurentWindow) -> Self {
        SeriesSpec::Explicit {
            lo: w.lo(),
            coeffs: strings(w.coeffs()),
        }
    }

    pub fn factor_spec(&self) -> Result<Option<FactorSpec>> {
        let SeriesSpec::Factors(f) = self else {
            return Ok(None);
        };
        let spec = FactorSpec {
            c: rational::parse(&f.c)?,
            j: f.j,
            a: rational::parse(&f.a)?,
            a0: rational::parse(&f.a0)?,
            pos_zeros: parse_all(&f.pos_zeros)?,
            pos_poles: parse_all(&f.pos_poles)?,
            neg_zeros: parse_all(&f.neg_zeros)?,
            neg_poles: parse_all(&f.neg_poles)?,
            zero_at_origin: f.zero_at_origin,
        };
        spec.validate()?;
        Ok(Some(spec))
    }

    /// Index range of the support when it is finite.
    pub fn natural_range(&self) -> Result<Option<(i64, i64)>> {
        match self {
            SeriesSpec::Explicit { lo, coeffs } => Ok(Some((*lo, *lo + coeffs.len() as i64 - 1))),
            SeriesSpec::Factors(_) => {
                let s = self.factor_spec()?.expect("factors");
                let finite = s.a.is_zero() && s.a0.is_zero() && s.pos_poles.is_empty() && s.neg_poles.is_empty();
                let k = s.shift();
                Ok(finite.then(|| (k - s.neg_zeros.len() as i64, k + s.pos_zeros.len() as i64)))
            }
        }
    }

    /// Window covering at least `need` (explicit series are zero-padded as
    /// required; the flag reports whether padding happened).
    pub fn window_covering(&self, need: (i64, i64), exp_truncation: usize) -> Result<(LaurentWindow, bool)> {
        match self {
            SeriesSpec::Explicit { lo, coeffs } => {
                let w = LaurentWindow::polynomial(*lo, parse_all(coeffs)?);
                let (nlo, nhi) = (need.0.min(w.lo()), need.1.max(w.hi()));
                let padded = nlo < w.lo() || nhi > w.hi();
                Ok((w.padded(nlo, nhi)?, padded))
            }
            SeriesSpec::Factors(_) => {
                let s = self.factor_spec()?.expect("factors");
                Ok((generate_product_form(&s, need.0, need.1, exp_truncation)?, false))
            }
        }
    }

    /// The series on its natural support (finite series only).
    pub fn window(&self, exp_truncation: usize) -> Result<LaurentWindow> {
        match self.natural_range()? {
            Some(r) => Ok(self.window_covering(r, exp_truncation)?.0),
            None => Err(Error::InsufficientData(
                "infinite series: an index range is required".into(),
            )),
        }
    }
}

/// Polynomial as `{"coeffs": [...]}` in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolySpec {
    pub coeffs: Vec<String>,
}

impl PolySpec {
    pub fn poly(&self) -> Result<RationalPoly> {
        Ok(RationalPoly::new(parse_all(&self.coeffs)?))
    }

    pub fn from_poly(p: &RationalPoly) -> Self {
        PolySpec {
            coeffs: strings(p.coeffs()),
        }
    }
}

/// Reads a polynomial from `{"coeffs": ...}` or from a finitely supported
/// series spec with no negative powers.
pub fn parse_polynomial(s: &str) -> Result<RationalPoly> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("kind").is_none() {
        let p: PolySpec = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        return p.poly();
    }
    let spec: SeriesSpec = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    let w = spec.window(1)?;
    if w.lo() < 0 {
        return Err(Error::Domain("polynomial has negative powers".into()));
    }
    let mut c = vec![Rational::zero(); w.lo() as usize];
    c.extend(w.coeffs().iter().cloned());
    Ok(RationalPoly::new(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Toeplitz,
    HurwitzType,
    HurwitzOfF,
    Generalized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(SeriesSpec),
    Many(Vec<SeriesSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub kind: MatrixKind,
    pub series: OneOrMany,
    #[serde(rename = "M", default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub row_offset: Option<i64>,
}

fn span(it: impl Iterator<Item = i64>) -> Option<(i64, i64)> {
    it.fold(None, |acc, k| match acc {
        None => Some((k, k)),
        Some((a, b)) => Some((a.min(k), b.max(k))),
    })
}

impl MatrixSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    fn series(&self) -> Vec<&SeriesSpec> {
        match &self.series {
            OneOrMany::One(s) => vec![s],
            OneOrMany::Many(v) => v.iter().collect(),
        }
    }

    /// Builds the view with backing windows wide enough for the block, and
    /// reports whether any explicit series had to be zero-padded.
    pub fn view_for(&self, rows: (i64, i64), cols: (i64, i64), exp_truncation: usize) -> Result<(MatrixView, bool)> {
        if rows.0 > rows.1 || cols.0 > cols.1 {
            return Err(Error::Range("window bounds must be ordered".into()));
        }
        let series = self.series();
        let want = |n: usize| -> Result<()> {
            if series.len() != n {
                return Err(Error::Parse(format!(
                    "{:?} needs {n} series, got {}",
                    self.kind,
                    series.len()
                )));
            }
            Ok(())
        };
        let cells = || (rows.0..=rows.1).flat_map(move |i| (cols.0..=cols.1).map(move |j| (i, j)));
        let odd = |i: i64| i.rem_euclid(2) == 1;
        let a_need = span(cells().filter(|&(i, _)| odd(i)).map(|(i, j)| j - (i + 1).div_euclid(2)));
        let b_need = span(cells().filter(|&(i, _)| !odd(i)).map(|(i, j)| j - i.div_euclid(2)));
        let unit = |r: Option<(i64, i64)>| r.unwrap_or((0, 0));
        match self.kind {
            MatrixKind::Toeplitz => {
                want(1)?;
                let need = (cols.0 - rows.1, cols.1 - rows.0);
                let (f, pad) = series[0].window_covering(need, exp_truncation)?;
                Ok((MatrixView::toeplitz(f), pad))
            }
            MatrixKind::HurwitzType => {
                want(2)?;
                let (p, pp) = series[0].window_covering(unit(a_need), exp_truncation)?;
                let (q, pq) = series[1].window_covering(unit(b_need), exp_truncation)?;
                Ok((MatrixView::hurwitz_type(p, q), pp || pq))
            }
            MatrixKind::HurwitzOfF => {
                want(1)?;
                let (alo, ahi) = unit(a_need);
                let (blo, bhi) = unit(b_need);
                let need = ((2 * alo + 1).min(2 * blo), (2 * ahi + 1).max(2 * bhi));
                let (f, pad) = series[0].window_covering(need, exp_truncation)?;
                let (p, q) = split_even_odd(&f);
                Ok((MatrixView::hurwitz_type(p, q), pad))
            }
            MatrixKind::Generalized => {
                want(1)?;
                let m = self
                    .m
                    .ok_or_else(|| Error::Parse("generalized matrix needs \"M\"".into()))?;
                let off = self.row_offset.unwrap_or(0);
                let mi = m as i64;
                let need = (cols.0 * mi - rows.1 - off + 1, cols.1 * mi - rows.0 - off + 1);
                let (f, pad) = series[0].window_covering(need, exp_truncation)?;
                Ok((MatrixView::generalized_with_offset(f, m, off)?, pad))
            }
        }
    }

    pub fn build(&self, rows: (i64, i64), cols: (i64, i64), exp_truncation: usize) -> Result<(WindowMatrix, bool)> {
        let (view, pad) = self.view_for(rows, cols, exp_truncation)?;
        Ok((view.extract(rows, cols)?, pad))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowMatrixJson {
    pub row_lo: i64,
    pub row_hi: i64,
    pub col_lo: i64,
    pub col_hi: i64,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub padded: Option<bool>,
}

impl WindowMatrixJson {
    pub fn from_matrix(m: &WindowMatrix, padded: Option<bool>) -> Self {
        WindowMatrixJson {
            row_lo: m.row_lo,
            row_hi: m.row_hi,
            col_lo: m.col_lo,
            col_hi: m.col_hi,
            entries: m.entries.iter().map(|r| strings(r)).collect(),
            padded,
        }
    }

    pub fn to_matrix(&self) -> Result<WindowMatrix> {
        let entries = self.entries.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
        let m = WindowMatrix::from_rows(self.row_lo, self.col_lo, entries)?;
        if m.row_hi != self.row_hi || m.col_hi != self.col_hi {
            return Err(Error::Shape("entries do not match the declared bounds".into()));
        }
        Ok(m)
    }
}

/// Coefficient window as JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowJson {
    pub lo: i64,
    pub hi: i64,
    pub coeffs: Vec<String>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
}

impl WindowJson {
    pub fn from_window(w: &LaurentWindow) -> Self {
        WindowJson {
            lo: w.lo(),
            hi: w.hi(),
            coeffs: strings(w.coeffs()),
            exact: w.is_exact(),
            tail_bound: w.tail_bound(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn explicit_and_factor_series() {
        let s = SeriesSpec::from_json(r#"{"kind":"explicit","lo":0,"coeffs":["3","4","1"]}"#).unwrap();
        assert_eq!(s.natural_range().unwrap(), Some((0, 2)));
        let w = s.window(1).unwrap();
        assert_eq!(w.coeffs(), &[int(3), int(4), int(1)]);

        let f = SeriesSpec::from_json(r#"{"kind":"factors","C":"1","pos_zeros":["1","3"]}"#).unwrap();
        let w = f.window(1).unwrap();
        assert_eq!(
            w.coeffs(),
            &[int(1), crate::rational::ratio(4, 3), crate::rational::ratio(1, 3)]
        );

        let g = SeriesSpec::from_json(r#"{"kind":"factors","A":"1"}"#).unwrap();
        assert!(g.window(4).is_err());
        assert!(g.window_covering((0, 3), 8).unwrap().0.is_exact());

        assert!(SeriesSpec::from_json(r#"{"kind":"explicit","lo":0,"coeffs":["1/0"]}"#)
            .unwrap()
            .window(1)
            .is_err());
        assert!(SeriesSpec::from_json(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn matrix_specs() {
        let spec = MatrixSpec::from_json(
            r#"{"kind":"hurwitz_type","series":[
                {"kind":"explicit","lo":0,"coeffs":["3","4","1"]},
                {"kind":"explicit","lo":0,"coeffs":["2","1"]}]}"#,
        )
        .unwrap();
        let (m, pad) = spec.build((1, 4), (1, 4), 1).unwrap();
        assert!(pad);
        let want = WindowMatrix::from_ints(&[&[3, 4, 1, 0], &[2, 1, 0, 0], &[0, 3, 4, 1], &[0, 2, 1, 0]]).unwrap();
        assert_eq!(m.entries, want.entries);

        let t =
            MatrixSpec::from_json(r#"{"kind":"toeplitz","series":{"kind":"explicit","lo":0,"coeffs":["1","2","1"]}}"#)
                .unwrap();
        let (m, pad) = t.build((1, 2), (1, 3), 1).unwrap();
        assert!(pad);
        assert_eq!(
            m.entries,
            WindowMatrix::from_ints(&[&[1, 2, 1], &[0, 1, 2]]).unwrap().entries
        );

        let g = MatrixSpec::from_json(
            r#"{"kind":"generalized","M":3,"series":{"kind":"explicit","lo":1,"coeffs":["1","2","3","4","5","6"]}}"#,
        )
        .unwrap();
        let (m, _) = g.build((1, 1), (1, 2), 1).unwrap();
        assert_eq!(m.entries[0], vec![int(3), int(6)]);

        let h = MatrixSpec::from_json(
            r#"{"kind":"hurwitz_of_f","series":{"kind":"explicit","lo":0,"coeffs":["2","3","1","4","0","1"]}}"#,
        )
        .unwrap();
        let (m, _) = h.build((1, 4), (1, 4), 1).unwrap();
        assert_eq!(m.entries, want.entries);
    }

    #[test]
    fn window_matrix_round_trip() {
        let m = WindowMatrix::from_ints(&[&[1, 2], &[0, 1]]).unwrap();
        let j = WindowMatrixJson::from_matrix(&m, Some(false));
        let text = serde_json::to_string(&j).unwrap();
        let back: WindowMatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_polynomial(r#"{"coeffs":["1","1/2"]}"#).unwrap().degree(), Some(1));
        let p = parse_polynomial(r#"{"kind":"factors","zero_at_origin":true,"pos_zeros":["1"]}"#).unwrap();
        assert_eq!(p, RationalPoly::from_ints(&[0, 1, 1]));
        assert!(parse_polynomial(r#"{"kind":"explicit","lo":-1,"coeffs":["1"]}"#).is_err());
    }
}
