//! Exact real-root tools: isolation, interlacing, residues, Routh arrays.

mod interlace;
mod residues;
mod routh;
mod sturm;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::rational::Rational;

pub use interlace::{check_interlacing, laurent_interlacing_check, TwoSidedZeros};
pub use residues::{partial_fraction_residues, PartialFractions, ResidueTerm, ResidueValue};
pub use routh::{quasi_stable_exact, routh_quasi_stability, RouthCertificate, RouthReport};
pub use sturm::{cauchy_bound, isolate_real_roots, sturm_isolate, RootInterval, RootIsolation, SturmSequence};

/// A positive magnitude, known exactly or enclosed in an open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootValue {
    Exact(Rational),
    Interval(Rational, Rational),
}

impl RootValue {
    pub fn lo(&self) -> &Rational {
        match self {
            RootValue::Exact(x) => x,
            RootValue::Interval(lo, _) => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            RootValue::Exact(x) => x,
            RootValue::Interval(_, hi) => hi,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = (crate::rational::to_f64(self.lo()), crate::rational::to_f64(self.hi()));
        0.5 * (a + b)
    }

    /// Magnitude `-x` of a nonpositive root `x`.
    pub(crate) fn magnitude_of(iv: &RootInterval) -> Self {
        if iv.is_exact() {
            RootValue::Exact(-iv.lo.clone())
        } else {
            RootValue::Interval(-iv.hi.clone(), -iv.lo.clone())
        }
    }
}

impl Serialize for RootValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RootValue::Exact(x) => s.collect_str(x),
            RootValue::Interval(lo, hi) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(&lo.to_string())?;
                seq.serialize_element(&hi.to_string())?;
                seq.end()
            }
        }
    }
}

/// Zeros come from the numerator `q`, poles from the denominator `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Zero,
    Pole,
}

/// `Pos` for factors in `z`, `Neg` for factors in `1/z` (magnitudes inverted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainSide {
    Pos,
    Neg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainElement {
    pub kind: ChainKind,
    pub side: ChainSide,
    pub value: RootValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub reason: String,
    pub witness: Option<ChainElement>,
}

/// Structural verdict on a ratio `F = C q / p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SVerdict {
    pub is_s_function: bool,
    /// Zeros and poles by increasing magnitude (after cancelling common factors).
    pub chain: Vec<ChainElement>,
    pub violation: Option<Violation>,
    /// Degree of the common factor of `p` and `q` that was cancelled.
    pub cancelled_degree: usize,
}

impl SVerdict {
    fn accept(chain: Vec<ChainElement>, cancelled_degree: usize) -> Self {
        SVerdict {
            is_s_function: true,
            chain,
            violation: None,
            cancelled_degree,
        }
    }

    fn reject(
        reason: impl Into<String>,
        witness: Option<ChainElement>,
        chain: Vec<ChainElement>,
        cancelled_degree: usize,
    ) -> Self {
        SVerdict {
            is_s_function: false,
            chain,
            violation: Some(Violation {
                reason: reason.into(),
                witness,
            }),
            cancelled_degree,
        }
    }
}

impl Serialize for SVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct V<'a> {
            reason: &'a str,
            witness: &'a Option<ChainElement>,
        }
        let mut st = s.serialize_struct("SVerdict", 4)?;
        st.serialize_field("is_s_function", &self.is_s_function)?;
        st.serialize_field("chain", &self.chain)?;
        st.serialize_field(
            "violation",
            &self.violation.as_ref().map(|v| V {
                reason: &v.reason,
                witness: &v.witness,
            }),
        )?;
        st.serialize_field("cancelled_degree", &self.cancelled_degree)?;
        st.end()
    }
}
