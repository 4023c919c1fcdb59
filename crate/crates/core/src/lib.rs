//! Exact structured-matrix toolkit for doubly infinite series.
//!
//! * [`laurent`]: coefficient windows, product-form generators, splits.
//! * [`structmat`]: Toeplitz, Hurwitz-type and generalized Hurwitz views.
//! * [`tnn`]: exact minor enumeration with witnesses.
//! * [`realroots`]: Sturm isolation, interlacing, residues, Routh arrays.
//! * [`analytic`]: floating-point falsifiers for half-plane and sector claims.
//! * [`spec`]: JSON input/output formats.

pub mod analytic;
pub mod error;
pub mod laurent;
pub mod poly;
pub mod rational;
pub mod realroots;
pub mod spec;
pub mod structmat;
pub mod tnn;

pub use error::{Error, Result};
pub use laurent::LaurentWindow;
pub use poly::RationalPoly;
pub use rational::Rational;
