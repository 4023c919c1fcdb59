use num_traits::{Signed, Zero};
use serde::Serialize;

use super::sturm::isolate_real_roots;
use crate::error::{Error, Result};
use crate::poly::RationalPoly;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouthMethod {
    /// Regular array, first column decides.
    Routh,
    /// Singular array; decided by splitting off `gcd(f(z), f(-z))`.
    GcdSplit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouthCertificate {
    /// Multiplicity of the root at the origin, removed before building the array.
    pub zero_roots: usize,
    #[serde(serialize_with = "rows_as_strings")]
    pub rows: Vec<Vec<Rational>>,
    /// Rows that were all zero and replaced by the derivative of the auxiliary polynomial.
    pub derivative_rows: Vec<usize>,
    /// First row whose leading entry is not positive.
    pub failing_row: Option<usize>,
    pub method: RouthMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouthReport {
    pub quasi_stable: bool,
    pub certificate: RouthCertificate,
}

fn rows_as_strings<S: serde::Serializer>(rows: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(rational::format).collect::<Vec<_>>()))
}

// Strips z^k and makes the leading coefficient positive.
fn normalize(f: &RationalPoly) -> Result<(usize, RationalPoly)> {
    if f.is_zero() {
        return Err(Error::Domain("quasi-stability of the zero polynomial".into()));
    }
    let (k, g) = f.strip_zero_roots();
    Ok((k, if g.lead().is_negative() { -&g } else { g }))
}

struct Array {
    rows: Vec<Vec<Rational>>,
    derivative_rows: Vec<usize>,
    /// Leading zero in a row that is not identically zero.
    singular: bool,
}

fn routh_array(g: &RationalPoly) -> Array {
    let n = g.degree().unwrap_or(0);
    let w = n / 2 + 1;
    let row_from = |start: usize| -> Vec<Rational> {
        (0..w)
            .map(|j| {
                let k = n as i64 - start as i64 - 2 * j as i64;
                if k >= 0 {
                    g.coeff(k as usize)
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let mut rows = vec![row_from(0), row_from(1)];
    let mut derivative_rows = Vec::new();
    let mut singular = false;
    let mut r = 1;
    loop {
        if rows[r].iter().all(Zero::is_zero) {
            // auxiliary polynomial of degree d from the row above
            let d = (n - (r - 1)) as i64;
            let above = rows[r - 1].clone();
            rows[r] = (0..w).map(|j| &above[j] * int((d - 2 * j as i64).max(0))).collect();
            derivative_rows.push(r);
        }
        if rows[r][0].is_zero() {
            singular = true;
            break;
        }
        if r == n {
            break;
        }
        let (a, b) = (&rows[r - 1], &rows[r]);
        let next: Vec<Rational> = (0..w)
            .map(|j| {
                let x = a.get(j + 1).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(j + 1).cloned().unwrap_or_else(Rational::zero);
                (&b[0] * x - &a[0] * y) / &b[0]
            })
            .collect();
        rows.push(next);
        r += 1;
    }
    Array {
        rows,
        derivative_rows,
        singular,
    }
}

/// Exact decision of "no root with positive real part".
///
/// Builds the Routh array, replacing identically zero rows by the derivative
/// of the auxiliary polynomial. A regular array (no zero rows, no zero
/// pivots) decides by the signs of its first column. Otherwise the decision
/// is made by [`quasi_stable_exact`] and the array is kept as the record.
pub fn routh_quasi_stability(f: &RationalPoly) -> Result<RouthReport> {
    let (k, g) = normalize(f)?;
    if g.degree() == Some(0) {
        let certificate = RouthCertificate {
            zero_roots: k,
            rows: vec![vec![g.lead()]],
            derivative_rows: Vec::new(),
            failing_row: None,
            method: RouthMethod::Routh,
        };
        return Ok(RouthReport {
            quasi_stable: true,
            certificate,
        });
    }
    let arr = routh_array(&g);
    let failing_row = arr.rows.iter().position(|r| !r[0].is_positive());
    let regular = !arr.singular && arr.derivative_rows.is_empty();
    let (quasi_stable, method) = if regular {
        (failing_row.is_none(), RouthMethod::Routh)
    } else {
        (quasi_stable_exact(f)?, RouthMethod::GcdSplit)
    };
    Ok(RouthReport {
        quasi_stable,
        certificate: RouthCertificate {
            zero_roots: k,
            rows: arr.rows,
            derivative_rows: arr.derivative_rows,
            failing_row,
            method,
        },
    })
}

/// Exact quasi-stability test without relying on the Routh singular-row rules.
///
/// With `h = gcd(g(z), g(-z))` (where `g` is `f` with its zero roots removed),
/// `f` is quasi-stable iff `g / h` is strictly Hurwitz and `h = H(z^2)` with
/// all roots of `H` real and negative, i.e. `h` has only imaginary-axis roots.
pub fn quasi_stable_exact(f: &RationalPoly) -> Result<bool> {
    let (_, g) = normalize(f)?;
    if g.coeffs().iter().any(Signed::is_negative) {
        return Ok(false);
    }
    let h = g.gcd(&g.reflect());
    let g2 = g.div_exact(&h)?;
    if g2.degree().unwrap_or(0) > 0 {
        let arr = routh_array(&g2);
        // g2 has no root pairs symmetric about the origin, so any zero pivot
        // or sign change means a root in the open right half-plane.
        if arr.singular || !arr.derivative_rows.is_empty() || arr.rows.iter().any(|r| !r[0].is_positive()) {
            return Ok(false);
        }
    }
    if h.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    let Some(big_h) = h.even_part_root() else {
        return Ok(false);
    };
    let distinct = big_h.squarefree_part().degree().unwrap_or(0);
    let roots = isolate_real_roots(&big_h)?;
    Ok(roots.distinct() == distinct && roots.intervals.iter().all(|iv| iv.hi.is_negative()))
}
