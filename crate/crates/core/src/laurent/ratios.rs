use num_traits::{Signed, Zero};
use serde::Serialize;

use super::LaurentWindow;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `a_k / a_{k+1}`, with `a_k / 0` (for `a_k > 0`) reported as infinite.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum RatioValue {
    Finite(Rational),
    Infinite,
}

impl Serialize for RatioValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RatioValue::Finite(r) => s.serialize_str(&r.to_string()),
            RatioValue::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioProfile {
    pub ratios: Vec<(i64, RatioValue)>,
    /// Indices of zero coefficients sitting between two nonzero ones.
    pub gaps: Vec<i64>,
    pub nondecreasing: bool,
    /// Smallest defined ratio: estimate of the inner radius of convergence.
    pub inner: Option<RatioValue>,
    /// Largest defined ratio: estimate of the outer radius of convergence.
    pub outer: Option<RatioValue>,
}

/// Successive coefficient ratios of a nonnegative window.
///
/// For a totally positive sequence the ratios never decrease and no zero sits
/// between nonzero coefficients; both are reported rather than enforced.
pub fn ratio_profile(u: &LaurentWindow) -> Result<RatioProfile> {
    if let Some((k, c)) = (u.lo()..).zip(u.coeffs()).find(|(_, c)| c.is_negative()) {
        return Err(Error::Domain(format!("coefficient {k} is negative ({c})")));
    }
    let c = u.coeffs();
    let ratios: Vec<(i64, RatioValue)> = c
        .windows(2)
        .zip(u.lo()..)
        .filter_map(|(pair, k)| match (pair[0].is_zero(), pair[1].is_zero()) {
            (_, false) => Some((k, RatioValue::Finite(&pair[0] / &pair[1]))),
            (false, true) => Some((k, RatioValue::Infinite)),
            (true, true) => None,
        })
        .collect();

    let first = c.iter().position(|x| !x.is_zero());
    let last = c.iter().rposition(|x| !x.is_zero());
    let gaps = match (first, last) {
        (Some(f), Some(l)) => (f..=l).filter(|&t| c[t].is_zero()).map(|t| u.lo() + t as i64).collect(),
        _ => Vec::new(),
    };
    let nondecreasing = ratios.windows(2).all(|w| w[0].1 <= w[1].1);
    let inner = ratios.iter().map(|(_, r)| r.clone()).min();
    let outer = ratios.iter().map(|(_, r)| r.clone()).max();
    Ok(RatioProfile {
        ratios,
        gaps,
        nondecreasing,
        inner,
        outer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn exponential_ratios() {
        let w = LaurentWindow::exact(0, vec![int(1), int(1), ratio(1, 2), ratio(1, 6)]);
        let p = ratio_profile(&w).unwrap();
        let vals: Vec<_> = p.ratios.iter().map(|(_, r)| r.clone()).collect();
        assert_eq!(
            vals,
            vec![
                RatioValue::Finite(int(1)),
                RatioValue::Finite(int(2)),
                RatioValue::Finite(int(3))
            ]
        );
        assert!(p.nondecreasing);
        assert!(p.gaps.is_empty());
    }

    #[test]
    fn geometric_ratios() {
        let w = LaurentWindow::exact(0, vec![int(1), ratio(1, 2), ratio(1, 4), ratio(1, 8)]);
        let p = ratio_profile(&w).unwrap();
        assert!(p.ratios.iter().all(|(_, r)| *r == RatioValue::Finite(int(2))));
        assert_eq!(p.inner, Some(RatioValue::Finite(int(2))));
        assert_eq!(p.outer, Some(RatioValue::Finite(int(2))));
    }

    #[test]
    fn gap_is_flagged() {
        let w = LaurentWindow::from_ints(0, &[1, 0, 1]);
        let p = ratio_profile(&w).unwrap();
        assert_eq!(p.gaps, vec![1]);
        assert!(!p.nondecreasing);
    }

    #[test]
    fn negative_is_rejected() {
        let w = LaurentWindow::from_ints(0, &[1, -1]);
        assert!(matches!(ratio_profile(&w), Err(Error::Domain(_))));
    }
}
