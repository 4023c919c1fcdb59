//! Total nonnegativity on finite windows.
//!
//! Minors are enumerated by brute force and evaluated with fraction-free
//! (Bareiss) elimination. Rows are first scaled by positive integers to clear
//! denominators, which preserves every minor's sign; exact rational values
//! are recovered only for the minors that are reported.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentWindow;
use crate::rational::Rational;
use crate::structmat::WindowMatrix;

/// Row and column index sets with the exact value of their minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub value: Rational,
}

impl MinorWitness {
    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TnnStatus {
    NonnegativeUpTo(usize),
    NegativeMinorFound(MinorWitness),
}

/// Outcome of [`check_tnn`]; says nothing about entries outside `bounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnnVerdict {
    pub status: TnnStatus,
    pub bounds: (i64, i64, i64, i64),
    pub order_checked: usize,
}

impl TnnVerdict {
    pub fn is_nonnegative(&self) -> bool {
        matches!(self.status, TnnStatus::NonnegativeUpTo(_))
    }

    pub fn witness(&self) -> Option<&MinorWitness> {
        match &self.status {
            TnnStatus::NegativeMinorFound(w) => Some(w),
            TnnStatus::NonnegativeUpTo(_) => None,
        }
    }
}

impl Serialize for TnnVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        match &self.status {
            TnnStatus::NonnegativeUpTo(k) => {
                map.serialize_entry("status", "nonnegative_up_to")?;
                map.serialize_entry("order", k)?;
            }
            TnnStatus::NegativeMinorFound(w) => {
                map.serialize_entry("status", "negative_minor")?;
                map.serialize_entry("rows", &w.rows)?;
                map.serialize_entry("cols", &w.cols)?;
                map.serialize_entry("value", &w.value.to_string())?;
            }
        }
        let (r0, r1, c0, c1) = self.bounds;
        map.serialize_entry("rows_window", &[r0, r1])?;
        map.serialize_entry("cols_window", &[c0, c1])?;
        map.serialize_entry("order_checked", &self.order_checked)?;
        map.end()
    }
}

/// Largest order checked by default: `min(5, smaller dimension)`.
pub fn default_max_order(m: &WindowMatrix) -> usize {
    5.min(m.n_rows()).min(m.n_cols())
}

/// Exact determinant of a square rational matrix.
pub fn exact_det(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("determinant of a non-square {}-row matrix", n)));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in m {
        let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(r.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }
    Ok(Rational::new(bareiss_big(&mut rows), scale))
}

/// Determinant of a `WindowMatrix` that happens to be square.
pub fn exact_det_window(m: &WindowMatrix) -> Result<Rational> {
    exact_det(&m.entries)
}

fn bareiss_big(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for c in 0..n.saturating_sub(1) {
        if a[c][c].is_zero() {
            match (c + 1..n).find(|&r| !a[r][c].is_zero()) {
                Some(r) => {
                    a.swap(c, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = (&a[i][j] * &a[c][c] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn bareiss_i128(a: &mut [i128], n: usize) -> i128 {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..n.saturating_sub(1) {
        if a[c * n + c] == 0 {
            match (c + 1..n).find(|&r| a[r * n + c] != 0) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(c * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        let piv = a[c * n + c];
        for i in c + 1..n {
            let lead = a[i * n + c];
            for j in c + 1..n {
                a[i * n + j] = (a[i * n + j] * piv - lead * a[c * n + j]) / prev;
            }
        }
        prev = piv;
    }
    sign * a[n * n - 1]
}

/// Window with rows scaled to integers, ready for repeated minor evaluation.
struct ScaledWindow {
    small: Option<Vec<Vec<i128>>>,
    big: Vec<Vec<BigInt>>,
    scales: Vec<BigInt>,
    row_lo: i64,
    col_lo: i64,
    n_rows: usize,
    n_cols: usize,
}

impl ScaledWindow {
    fn new(m: &WindowMatrix, max_order: usize) -> Self {
        let mut big = Vec::with_capacity(m.n_rows());
        let mut scales = Vec::with_capacity(m.n_rows());
        for r in &m.entries {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            big.push(r.iter().map(|x| x.numer() * (&l / x.denom())).collect::<Vec<_>>());
            scales.push(l);
        }
        let max_bits = big.iter().flatten().map(|x: &BigInt| x.bits()).max().unwrap_or(0) as f64;
        let k = max_order.max(1) as f64;
        // Bareiss intermediates are minors (Hadamard: (sqrt(k) M)^k); their
        // pairwise products must fit in i128.
        let bits_needed = 2.0 * k * (max_bits + 0.5 * k.log2()) + 2.0;
        let small = (bits_needed < 125.0).then(|| {
            big.iter()
                .map(|r| r.iter().map(|x| x.to_i128().expect("fits")).collect())
                .collect()
        });
        ScaledWindow {
            small,
            big,
            scales,
            row_lo: m.row_lo,
            col_lo: m.col_lo,
            n_rows: m.n_rows(),
            n_cols: m.n_cols(),
        }
    }

    /// Sign of the scaled minor (same as the sign of the true minor).
    fn minor_sign(&self, rows: &[usize], cols: &[usize], buf: &mut Vec<i128>) -> i8 {
        let k = rows.len();
        match &self.small {
            Some(s) => {
                buf.clear();
                for &i in rows {
                    buf.extend(cols.iter().map(|&j| s[i][j]));
                }
                bareiss_i128(buf, k).signum() as i8
            }
            None => {
                let d = self.big_minor(rows, cols);
                if d.is_zero() {
                    0
                } else if d.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn big_minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        let mut a: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.big[i][j].clone()).collect())
            .collect();
        bareiss_big(&mut a)
    }

    fn minor_value(&self, rows: &[usize], cols: &[usize]) -> Rational {
        let scale = rows.iter().fold(BigInt::one(), |acc, &i| acc * &self.scales[i]);
        Rational::new(self.big_minor(rows, cols), scale)
    }

    fn witness(&self, rows: &[usize], cols: &[usize]) -> MinorWitness {
        MinorWitness {
            rows: rows.iter().map(|&i| self.row_lo + i as i64).collect(),
            cols: cols.iter().map(|&j| self.col_lo + j as i64).collect(),
            value: self.minor_value(rows, cols),
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for t in i..k {
            c[t] = c[t - 1] + 1;
        }
    }
}

// Preference among negative witnesses of one order: value closest to zero,
// then lexicographic on (rows, cols).
fn prefer(a: MinorWitness, b: MinorWitness) -> MinorWitness {
    let ka = (a.value.abs(), &a.rows, &a.cols);
    let kb = (b.value.abs(), &b.rows, &b.cols);
    if kb < ka {
        b
    } else {
        a
    }
}

/// Enumerates all minors of orders `1..=max_order`.
///
/// Stops at the smallest order that has a negative minor. Among the negative
/// minors of that order the reported witness is the one whose value is
/// closest to zero, ties broken lexicographically by `(rows, cols)`; the
/// choice does not depend on how the work is scheduled.
pub fn check_tnn(m: &WindowMatrix, max_order: usize) -> Result<TnnVerdict> {
    let limit = m.n_rows().min(m.n_cols());
    if max_order == 0 || max_order > limit {
        return Err(Error::Shape(format!(
            "order {max_order} not in 1..={limit} for a {}x{} window",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let sw = ScaledWindow::new(m, max_order);
    let bounds = (m.row_lo, m.row_hi, m.col_lo, m.col_hi);
    for k in 1..=max_order {
        let row_sets = combinations(sw.n_rows, k);
        let col_sets = combinations(sw.n_cols, k);
        let found = row_sets
            .par_iter()
            .filter_map(|rows| {
                let mut buf = Vec::with_capacity(k * k);
                col_sets
                    .iter()
                    .filter(|cols| sw.minor_sign(rows, cols, &mut buf) < 0)
                    .map(|cols| sw.witness(rows, cols))
                    .reduce(prefer)
            })
            .reduce_with(prefer);
        if let Some(w) = found {
            return Ok(TnnVerdict {
                status: TnnStatus::NegativeMinorFound(w),
                bounds,
                order_checked: k,
            });
        }
    }
    Ok(TnnVerdict {
        status: TnnStatus::NonnegativeUpTo(max_order),
        bounds,
        order_checked: max_order,
    })
}

/// First nonzero `k x k` minor in lexicographic `(rows, cols)` order.
pub fn has_nonzero_minor_of_order(m: &WindowMatrix, k: usize) -> Result<Option<MinorWitness>> {
    let limit = m.n_rows().min(m.n_cols());
    if k == 0 || k > limit {
        return Err(Error::Shape(format!("order {k} not in 1..={limit}")));
    }
    let sw = ScaledWindow::new(m, k);
    let row_sets = combinations(sw.n_rows, k);
    let col_sets = combinations(sw.n_cols, k);
    Ok(row_sets.par_iter().find_map_first(|rows| {
        let mut buf = Vec::with_capacity(k * k);
        col_sets
            .iter()
            .find(|cols| sw.minor_sign(rows, cols, &mut buf) != 0)
            .map(|cols| sw.witness(rows, cols))
    }))
}

/// Detects the rank-one case `a_k = a_0 (a_1/a_0)^k`, `b_k = (b_0/a_0) a_k`.
///
/// Returns `(a_1/a_0, b_0/a_0)` when both windows follow that pattern on
/// every stored index. These are exactly the series for which every order-2
/// minor of `H(p, q)` vanishes.
pub fn detect_geometric_degeneracy(p: &LaurentWindow, q: &LaurentWindow) -> Result<Option<(Rational, Rational)>> {
    let a0 = p
        .get(0)
        .map_err(|_| Error::InsufficientData("degeneracy test needs a_0 inside the window".into()))?;
    if a0.is_zero() {
        return Err(Error::Precondition("a_0 must be nonzero".into()));
    }
    let a1 = p
        .get(1)
        .map_err(|_| Error::InsufficientData("degeneracy test needs a_1 inside the window".into()))?;
    let b0 = q
        .get(0)
        .map_err(|_| Error::InsufficientData("degeneracy test needs b_0 inside the window".into()))?;
    let ratio = a1 / a0;
    let scale = b0 / a0;
    let expected_a = |k: i64| -> Option<Rational> {
        if k >= 0 {
            Some(a0 * num_traits::pow(ratio.clone(), k as usize))
        } else if ratio.is_zero() {
            None
        } else {
            Some(a0 / num_traits::pow(ratio.clone(), (-k) as usize))
        }
    };
    for (k, c) in (p.lo()..).zip(p.coeffs()) {
        if expected_a(k).as_ref() != Some(c) {
            return Ok(None);
        }
    }
    for (k, c) in (q.lo()..).zip(q.coeffs()) {
        match expected_a(k) {
            Some(a) if &scale * &a == *c => {}
            _ => return Ok(None),
        }
    }
    Ok(Some((ratio, scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::structmat::MatrixView;

    fn m(rows: &[&[i64]]) -> WindowMatrix {
        WindowMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(exact_det_window(&m(&[&[1, 2], &[0, 1]])).unwrap(), int(1));
        assert_eq!(
            exact_det_window(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(),
            int(1)
        );
        assert_eq!(exact_det_window(&m(&[&[4, 1], &[1, 0]])).unwrap(), int(-1));
        assert!(matches!(
            exact_det_window(&m(&[&[1, 2, 3], &[4, 5, 6]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn det_with_fractions_and_pivoting() {
        let a = vec![
            vec![int(0), ratio(1, 2), int(1)],
            vec![ratio(2, 3), int(0), int(1)],
            vec![int(1), int(1), int(0)],
        ];
        // -1/2 (0 - 1) + 1 (2/3 - 0) = 1/2 + 2/3
        assert_eq!(exact_det(&a).unwrap(), ratio(7, 6));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn counterexample_window_has_witness() {
        let h = m(&[&[3, 4, 1, 0], &[2, 1, 0, 0], &[0, 3, 4, 1], &[0, 2, 1, 0]]);
        let v = check_tnn(&h, 2).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.rows, vec![1, 2]);
        assert_eq!(w.cols, vec![2, 3]);
        assert_eq!(w.value, int(-1));
        assert_eq!(v.order_checked, 2);
    }

    #[test]
    fn interlacing_window_is_nonnegative() {
        let p = LaurentWindow::from_ints(0, &[8, 6, 1]).padded(-4, 6).unwrap();
        let q = LaurentWindow::from_ints(0, &[3, 4, 1]).padded(-4, 6).unwrap();
        let h = MatrixView::hurwitz_type(p, q).extract((1, 4), (1, 4)).unwrap();
        let v = check_tnn(&h, 4).unwrap();
        assert_eq!(v.status, TnnStatus::NonnegativeUpTo(4));
    }

    #[test]
    fn diagonal_is_nonnegative() {
        let d = m(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 5]]);
        for k in 1..=3 {
            assert!(check_tnn(&d, k).unwrap().is_nonnegative());
        }
        assert!(check_tnn(&d, 4).is_err());
    }

    #[test]
    fn nonzero_minor_examples() {
        let w = has_nonzero_minor_of_order(&m(&[&[1, 2], &[0, 1]]), 2).unwrap().unwrap();
        assert_eq!(w.value, int(1));

        let geo = LaurentWindow::polynomial(-4, (-4..=4).map(pow2).collect());
        let t = MatrixView::toeplitz(geo).extract((1, 3), (1, 3)).unwrap();
        assert!(has_nonzero_minor_of_order(&t, 2).unwrap().is_none());

        let z = m(&[&[0, 0], &[0, 0]]);
        assert!(has_nonzero_minor_of_order(&z, 1).unwrap().is_none());
    }

    fn pow2(k: i64) -> Rational {
        if k >= 0 {
            int(1 << k)
        } else {
            ratio(1, 1 << -k)
        }
    }

    #[test]
    fn degeneracy_examples() {
        let p = LaurentWindow::exact(-2, (-2..=2).map(pow2).collect());
        let q = LaurentWindow::exact(-2, (-2..=2).map(|k| int(3) * pow2(k)).collect());
        assert_eq!(detect_geometric_degeneracy(&p, &q).unwrap(), Some((int(2), int(3))));

        let p = LaurentWindow::from_ints(0, &[3, 4, 1]);
        let q = LaurentWindow::from_ints(0, &[2, 1]);
        assert_eq!(detect_geometric_degeneracy(&p, &q).unwrap(), None);

        let one = LaurentWindow::from_ints(0, &[1, 1]);
        assert_eq!(detect_geometric_degeneracy(&one, &one).unwrap(), Some((int(1), int(1))));

        let p = LaurentWindow::from_ints(0, &[0, 1]);
        assert!(matches!(
            detect_geometric_degeneracy(&p, &one),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn big_entries_take_the_bigint_path() {
        let small = [[3, 4, 1, 0], [2, 1, 0, 0], [0, 3, 4, 1], [0, 2, 1, 0]];
        let big = 1i64 << 40;
        let rows: Vec<Vec<i64>> = small.iter().map(|r| r.iter().map(|x| x * big).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let v = check_tnn(&m(&refs), 3).unwrap();
        let w = v.witness().unwrap();
        assert_eq!((w.rows.clone(), w.cols.clone()), (vec![1, 2], vec![2, 3]));
        assert_eq!(w.value, -Rational::from_integer(BigInt::from(big) * BigInt::from(big)));
    }
}
