use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentWindow;
use crate::poly::RationalPoly;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxRoot {
    #[serde(serialize_with = "super::complex_pair")]
    pub z: Complex64,
    /// `|f(z)| / sum |c_k| |z|^k`.
    pub residual: f64,
}

const MAX_ITER: usize = 2000;

fn relative_residual(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut val = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &ck in c.iter().rev() {
        val = val * z + ck;
        scale = scale * r + ck.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        val.norm() / scale
    }
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

// Aberth-Ehrlich iteration on a polynomial with nonzero constant term.
fn aberth(c: &[f64], tol: f64) -> Result<Vec<ApproxRoot>> {
    let d = c.len() - 1;
    let lead = c[d];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let radius = c[0].abs().powf(1.0 / d as f64).max(1e-8);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let mut biggest = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval_with_derivative(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                biggest = biggest.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if biggest < 1e-15 {
            converged = true;
            break;
        }
    }
    let roots: Vec<ApproxRoot> = z
        .iter()
        .map(|&r| ApproxRoot {
            z: r,
            residual: relative_residual(&c, r),
        })
        .collect();
    if !converged && roots.iter().any(|r| !(r.residual <= tol)) {
        return Err(Error::NonConvergence { iterations, best: z });
    }
    Ok(roots)
}

/// All complex roots of `f` (with multiplicity), each with its relative residual.
///
/// Roots at the origin are returned exactly.
pub fn approximate_roots(f: &RationalPoly, tol: f64) -> Result<Vec<ApproxRoot>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let (k, g) = f.strip_zero_roots();
    let mut out = vec![
        ApproxRoot {
            z: Complex64::new(0.0, 0.0),
            residual: 0.0
        };
        k
    ];
    if g.degree().unwrap_or(0) > 0 {
        out.extend(aberth(&g.to_f64_coeffs(), tol)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorReport {
    pub roots: Vec<ApproxRoot>,
    /// Smallest `|arg r|` over the nonzero roots; `pi` when there are none.
    pub min_abs_arg: f64,
    /// `pi / M`.
    pub half_angle: f64,
    pub pass: bool,
}

/// Checks that a Laurent polynomial has no zeros in `{ |arg z| < pi/M }`.
///
/// The monomial factor is cleared, then each squarefree factor (exact) is
/// solved numerically, so repeated roots are located as accurately as simple
/// ones. Roots on the boundary count as a pass since the sector is open.
pub fn sector_check(f: &LaurentWindow, m: usize, tol: f64) -> Result<SectorReport> {
    if m == 0 {
        return Err(Error::Domain("sector index M must be positive".into()));
    }
    if !f.has_finite_support() {
        return Err(Error::InsufficientData(
            "sector check needs a Laurent polynomial (zero tails on both sides)".into(),
        ));
    }
    let poly = RationalPoly::new(f.coeffs().to_vec());
    if poly.is_zero() {
        return Err(Error::Domain("sector check of the zero series".into()));
    }
    let (_, g) = poly.strip_zero_roots();
    let mut roots = Vec::new();
    for (factor, mult) in g.squarefree_decomposition() {
        let rs = approximate_roots(&factor, tol)?;
        for _ in 0..mult {
            roots.extend(rs.iter().copied());
        }
    }
    let min_abs_arg = roots.iter().map(|r| r.z.arg().abs()).fold(PI, f64::min);
    let half_angle = PI / m as f64;
    Ok(SectorReport {
        roots,
        min_abs_arg,
        half_angle,
        pass: min_abs_arg >= half_angle - tol,
    })
}
