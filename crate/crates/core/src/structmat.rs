//! Lazily indexed four-way infinite structured matrices.
//!
//! Indices are plain signed integers; `(1, 1)` is the upper-left entry of the
//! usual printed form. Entries are read straight from the backing
//! [`LaurentWindow`]s and never zero-filled: widen the window with
//! [`LaurentWindow::padded`] when the series is known to vanish there.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{split_even_odd, window_add, window_shift, LaurentWindow};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixView {
    /// `T(f)`: entry `(i, j)` is `f_{j-i}`.
    Toeplitz(LaurentWindow),
    /// `H(p, q)`: odd rows carry `p` (`a_{j-(i+1)/2}`), even rows carry `q`
    /// (`b_{j-i/2}`), so that `(1, 1) = a_0` and `(2, 1) = b_0`.
    HurwitzType { p: LaurentWindow, q: LaurentWindow },
    /// `(f_{jM - (i + row_offset) + 1})`. With `row_offset = 0` the entry
    /// `(1, 1)` is `f_M`; `row_offset = 1` gives `(f_{jM-i})`.
    ///
    /// For `M = 2` and `row_offset = 1` this is exactly the Hurwitz-type view
    /// of the even/odd split of `f`.
    GeneralizedHurwitz {
        f: LaurentWindow,
        m: usize,
        row_offset: i64,
    },
    /// `(h_ij)` with `A` at `j = 2i-1`, `B` at `j = 2i` and zeros elsewhere.
    TwoBandMask { a: Rational, b: Rational },
}

impl MatrixView {
    pub fn toeplitz(f: LaurentWindow) -> Self {
        MatrixView::Toeplitz(f)
    }

    pub fn hurwitz_type(p: LaurentWindow, q: LaurentWindow) -> Self {
        MatrixView::HurwitzType { p, q }
    }

    /// Hurwitz matrix of `f = q(z^2) + z p(z^2)`.
    pub fn hurwitz_of(f: &LaurentWindow) -> Self {
        let (p, q) = split_even_odd(f);
        MatrixView::HurwitzType { p, q }
    }

    pub fn generalized(f: LaurentWindow, m: usize) -> Result<Self> {
        Self::generalized_with_offset(f, m, 0)
    }

    pub fn generalized_with_offset(f: LaurentWindow, m: usize, row_offset: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("generalized Hurwitz matrix needs M >= 1".into()));
        }
        Ok(MatrixView::GeneralizedHurwitz { f, m, row_offset })
    }

    pub fn two_band(a: Rational, b: Rational) -> Self {
        MatrixView::TwoBandMask { a, b }
    }

    /// Exact entry at `(i, j)`.
    pub fn entry(&self, i: i64, j: i64) -> Result<Rational> {
        match self {
            MatrixView::Toeplitz(f) => f.get(j - i).cloned(),
            MatrixView::HurwitzType { p, q } => {
                if i.rem_euclid(2) == 1 {
                    p.get(j - (i + 1).div_euclid(2)).cloned()
                } else {
                    q.get(j - i.div_euclid(2)).cloned()
                }
            }
            MatrixView::GeneralizedHurwitz { f, m, row_offset } => f.get(j * *m as i64 - (i + row_offset) + 1).cloned(),
            MatrixView::TwoBandMask { a, b } => Ok(if j == 2 * i - 1 {
                a.clone()
            } else if j == 2 * i {
                b.clone()
            } else {
                Rational::zero()
            }),
        }
    }

    /// Dense copy of rows `row_lo..=row_hi`, columns `col_lo..=col_hi`.
    pub fn extract(&self, rows: (i64, i64), cols: (i64, i64)) -> Result<WindowMatrix> {
        extract_window(self, rows.0, rows.1, cols.0, cols.1)
    }
}

/// Finite dense block of a [`MatrixView`], with its absolute index bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMatrix {
    pub row_lo: i64,
    pub row_hi: i64,
    pub col_lo: i64,
    pub col_hi: i64,
    pub entries: Vec<Vec<Rational>>,
}

impl WindowMatrix {
    /// Builds a window from explicit rows whose upper-left entry has index
    /// `(row_lo, col_lo)`.
    pub fn from_rows(row_lo: i64, col_lo: i64, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = entries.len();
        let n_cols = entries.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Shape("window must have at least one entry".into()));
        }
        if entries.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(WindowMatrix {
            row_lo,
            row_hi: row_lo + n_rows as i64 - 1,
            col_lo,
            col_hi: col_lo + n_cols as i64 - 1,
            entries,
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
            .collect();
        Self::from_rows(1, 1, entries)
    }

    pub fn n_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn n_cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Entry by absolute index.
    pub fn at(&self, i: i64, j: i64) -> Option<&Rational> {
        if i < self.row_lo || i > self.row_hi || j < self.col_lo || j > self.col_hi {
            return None;
        }
        Some(&self.entries[(i - self.row_lo) as usize][(j - self.col_lo) as usize])
    }

    /// Square submatrix on the given absolute row and column indices.
    pub fn submatrix(&self, rows: &[i64], cols: &[i64]) -> Result<Vec<Vec<Rational>>> {
        rows.iter()
            .map(|&i| {
                cols.iter()
                    .map(|&j| {
                        self.at(i, j)
                            .cloned()
                            .ok_or_else(|| Error::Shape(format!("index ({i}, {j}) outside the window")))
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn entry(view: &MatrixView, i: i64, j: i64) -> Result<Rational> {
    view.entry(i, j)
}

pub fn extract_window(view: &MatrixView, row_lo: i64, row_hi: i64, col_lo: i64, col_hi: i64) -> Result<WindowMatrix> {
    if row_lo > row_hi || col_lo > col_hi {
        return Err(Error::Shape(format!(
            "bad window rows {row_lo}..{row_hi}, cols {col_lo}..{col_hi}"
        )));
    }
    let entries = (row_lo..=row_hi)
        .map(|i| (col_lo..=col_hi).map(|j| view.entry(i, j)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(WindowMatrix {
        row_lo,
        row_hi,
        col_lo,
        col_hi,
        entries,
    })
}

/// Rectangular block of index bounds used by the identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub row_lo: i64,
    pub row_hi: i64,
    pub col_lo: i64,
    pub col_hi: i64,
}

impl Bounds {
    pub fn new(rows: (i64, i64), cols: (i64, i64)) -> Self {
        Bounds {
            row_lo: rows.0,
            row_hi: rows.1,
            col_lo: cols.0,
            col_hi: cols.1,
        }
    }

    fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.row_lo..=self.row_hi).flat_map(move |i| (self.col_lo..=self.col_hi).map(move |j| (i, j)))
    }
}

/// Checks that `H(q, z p)` is `H(p, q)` with row indices advanced by one.
pub fn row_shift_check(p: &LaurentWindow, q: &LaurentWindow, bounds: Bounds) -> Result<bool> {
    let h = MatrixView::hurwitz_type(p.clone(), q.clone());
    let shifted = MatrixView::hurwitz_type(q.clone(), window_shift(p));
    for (i, j) in bounds.cells() {
        if shifted.entry(i, j)? != h.entry(i + 1, j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entrywise check of `T(Ap + Bq) = H^T(A, B) H(p, q)` and
/// `T(Aq + B zp) = H^T(A, B) H(q, zp)` on `bounds`.
///
/// Row `i` of the two-band factor has nonzeros only in columns `2i-1` and
/// `2i`, so each product entry is a two-term sum.
pub fn factorization_check(
    p: &LaurentWindow,
    q: &LaurentWindow,
    a: &Rational,
    b: &Rational,
    bounds: Bounds,
) -> Result<bool> {
    let pt = window_shift(p);
    let pairs = [(p, q), (q, &pt)];
    for (first, second) in pairs {
        let lhs = MatrixView::toeplitz(window_add(first, second, a, b)?);
        let h = MatrixView::hurwitz_type(first.clone(), second.clone());
        for (i, j) in bounds.cells() {
            let rhs = a * h.entry(2 * i - 1, j)? + b * h.entry(2 * i, j)?;
            if lhs.entry(i, j)? != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `T(Ap + Bq)` evaluated as the explicit product `H^T(A, B) H(p, q)` over
/// the inner index range needed by `bounds` (reference path for tests).
pub fn mask_product_entry(mask: &MatrixView, h: &MatrixView, i: i64, j: i64, inner: (i64, i64)) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in inner.0..=inner.1 {
        let m = mask.entry(i, k)?;
        if !m.is_zero() {
            acc += m * h.entry(k, j)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(m: &WindowMatrix) -> Vec<Vec<i64>> {
        m.entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap()).collect())
            .collect()
    }

    fn p341() -> LaurentWindow {
        LaurentWindow::from_ints(0, &[3, 4, 1])
    }

    fn q21() -> LaurentWindow {
        LaurentWindow::from_ints(0, &[2, 1])
    }

    #[test]
    fn toeplitz_entries() {
        let f = LaurentWindow::from_ints(0, &[1, 2, 1]);
        let t = MatrixView::toeplitz(f.clone());
        assert_eq!(t.entry(1, 1).unwrap(), int(1));
        assert_eq!(t.entry(1, 2).unwrap(), int(2));
        assert!(matches!(t.entry(2, 1), Err(Error::OutsideWindow { index: -1, .. })));
        let t = MatrixView::toeplitz(f.padded(-1, 2).unwrap());
        assert_eq!(t.entry(2, 1).unwrap(), int(0));
    }

    #[test]
    fn hurwitz_type_entries() {
        let h = MatrixView::hurwitz_type(p341().padded(-1, 2).unwrap(), q21());
        assert_eq!(h.entry(1, 1).unwrap(), int(3));
        assert_eq!(h.entry(2, 1).unwrap(), int(2));
        assert_eq!(h.entry(3, 1).unwrap(), int(0));
    }

    #[test]
    fn generalized_entry() {
        let f = LaurentWindow::from_ints(0, &[1, 2, 3, 4, 5, 6, 7]);
        let g = MatrixView::generalized(f, 3).unwrap();
        // (1,1) is f_M = f_3
        assert_eq!(g.entry(1, 1).unwrap(), int(4));
        assert_eq!(g.entry(1, 2).unwrap(), int(7));
    }

    #[test]
    fn extraction_examples() {
        let t = MatrixView::toeplitz(LaurentWindow::from_ints(0, &[1, 2, 1]).padded(-2, 4).unwrap());
        let w = t.extract((1, 2), (1, 3)).unwrap();
        assert_eq!(ints(&w), vec![vec![1, 2, 1], vec![0, 1, 2]]);

        let mask = MatrixView::two_band(int(1), int(2));
        let w = mask.extract((1, 2), (1, 4)).unwrap();
        assert_eq!(ints(&w), vec![vec![1, 2, 0, 0], vec![0, 0, 1, 2]]);

        let h = MatrixView::hurwitz_type(p341().padded(-2, 4).unwrap(), q21().padded(-2, 4).unwrap());
        let w = h.extract((1, 4), (1, 4)).unwrap();
        assert_eq!(
            ints(&w),
            vec![vec![3, 4, 1, 0], vec![2, 1, 0, 0], vec![0, 3, 4, 1], vec![0, 2, 1, 0]]
        );
        assert_eq!(h.extract((1, 4), (1, 4)).unwrap(), w);
    }

    #[test]
    fn extraction_never_pads() {
        let h = MatrixView::hurwitz_type(p341(), q21());
        assert!(matches!(h.extract((1, 4), (1, 4)), Err(Error::OutsideWindow { .. })));
    }

    #[test]
    fn row_shift_examples() {
        let p = p341().padded(-4, 6).unwrap();
        let q = q21().padded(-4, 6).unwrap();
        assert!(row_shift_check(&p, &q, Bounds::new((1, 3), (1, 4))).unwrap());
        let one = LaurentWindow::from_ints(0, &[1]).padded(-4, 4).unwrap();
        assert!(row_shift_check(&one, &one, Bounds::new((1, 3), (1, 4))).unwrap());
        let short = LaurentWindow::from_ints(0, &[1]);
        assert!(matches!(
            row_shift_check(&p, &short, Bounds::new((1, 3), (1, 4))),
            Err(Error::OutsideWindow { .. })
        ));
    }

    #[test]
    fn factorization_examples() {
        let p = p341().padded(-4, 6).unwrap();
        let q = q21().padded(-4, 6).unwrap();
        let b = Bounds::new((1, 2), (1, 4));
        assert!(factorization_check(&p, &q, &int(1), &int(2), b).unwrap());
        assert!(factorization_check(&p, &q, &int(0), &int(0), b).unwrap());
        assert!(factorization_check(&p, &q, &int(1), &int(0), b).unwrap());
    }

    #[test]
    fn mask_product_matches_toeplitz() {
        let p = p341().padded(-6, 8).unwrap();
        let q = q21().padded(-6, 8).unwrap();
        let (a, b) = (int(2), int(3));
        let mask = MatrixView::two_band(a.clone(), b.clone());
        let h = MatrixView::hurwitz_type(p.clone(), q.clone());
        let t = MatrixView::toeplitz(window_add(&p, &q, &a, &b).unwrap());
        for i in 1..=3 {
            for j in 1..=4 {
                let via_product = mask_product_entry(&mask, &h, i, j, (2 * i - 3, 2 * i + 2)).unwrap();
                assert_eq!(via_product, t.entry(i, j).unwrap());
            }
        }
    }

    #[test]
    fn m2_coherence_with_offset_one() {
        let f = LaurentWindow::from_ints(-3, &[1, 4, 2, 7, 5, 3, 9, 8])
            .padded(-12, 12)
            .unwrap();
        let g = MatrixView::generalized_with_offset(f.clone(), 2, 1).unwrap();
        let h = MatrixView::hurwitz_of(&f);
        for i in -2..=4 {
            for j in -1..=4 {
                assert_eq!(g.entry(i, j).unwrap(), h.entry(i, j).unwrap());
            }
        }
    }
}
