//! Complex root isolation: Aberth–Ehrlich simultaneous iteration.
//!
//! Multiplicities are never inferred numerically: callers factor through the
//! exact squarefree decomposition and the iteration only ever sees squarefree
//! input.

use num_complex::Complex64;

use crate::bigfloat::{MpComplex, Scalar};
use crate::error::{Error, Result};
use crate::poly::uni::UniPoly;

/// Precision ladder used on residual failure.
pub const PRECISION_LADDER: [u32; 3] = [53, 212, 848];

/// Root separation tolerance at default precision.
pub const SEPARATION_TOL: f64 = 1e-8;

fn eval_and_derivative<S: Scalar>(coeffs: &[S], z: &S) -> (S, S) {
    let n = coeffs.len();
    let mut p = coeffs[n - 1].clone();
    let mut dp = S::from_c64(Complex64::new(0.0, 0.0), 53);
    for c in coeffs[..n - 1].iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

/// All roots of a squarefree polynomial given by low-to-high coefficients.
pub fn aberth<S: Scalar>(coeffs: &[S], prec: u32) -> Result<Vec<S>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs.last().map(|c| c.is_zero()).unwrap_or(true) {
        return Err(Error::Degenerate(
            "root finding needs a nonzero leading coefficient and degree >= 1".into(),
        ));
    }
    let lead = coeffs[n].clone();
    let monic: Vec<S> = coeffs.iter().map(|c| c.div(&lead)).collect();
    if n == 1 {
        return Ok(vec![monic[0].neg()]);
    }

    // Cauchy-style radius bound.
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<S> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.45;
            S::from_c64(
                Complex64::from_polar(radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64), theta),
                prec,
            )
        })
        .collect();

    let eps = if prec <= 53 {
        1e-14
    } else {
        2f64.powi(-(prec as i32) + 6)
    };
    let max_iter = 80 + 4 * prec as usize;
    for _ in 0..max_iter {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval_and_derivative(&monic, &z[k]);
            if p.abs() == 0.0 {
                continue;
            }
            let w = if dp.abs() == 0.0 {
                S::from_c64(Complex64::new(eps, eps), prec)
            } else {
                p.div(&dp)
            };
            let mut s = S::from_c64(Complex64::new(0.0, 0.0), prec);
            for j in 0..n {
                if j != k {
                    let diff = z[k].sub(&z[j]);
                    if diff.abs() == 0.0 {
                        // coincident iterates: nudge
                        let nudge = S::from_c64(Complex64::new(1e-6, 1e-6), prec);
                        z[k] = z[k].add(&nudge);
                        continue;
                    }
                    s = s.add(&S::from_c64(Complex64::new(1.0, 0.0), prec).div(&diff));
                }
            }
            let denom = S::from_c64(Complex64::new(1.0, 0.0), prec).sub(&w.mul(&s));
            let step = if denom.abs() == 0.0 { w.clone() } else { w.div(&denom) };
            z[k] = z[k].sub(&step);
            moved = moved.max(step.abs() / (1.0 + z[k].abs()));
        }
        if moved < eps {
            return Ok(z);
        }
    }
    // accept if residuals are adequate anyway
    let worst = z
        .iter()
        .map(|zk| eval_and_derivative(&monic, zk).0.abs())
        .fold(0.0f64, f64::max);
    if worst < eps.max(1e-11) * (1.0 + radius.powi(n as i32)) {
        Ok(z)
    } else {
        Err(Error::Numerical(format!(
            "Aberth iteration did not converge (residual {worst:.3e})"
        )))
    }
}

fn roots_at_precision(p: &UniPoly, prec: u32) -> Result<Vec<Complex64>> {
    if prec <= 53 {
        let coeffs: Vec<Complex64> = p.to_scalars(53);
        aberth(&coeffs, 53).map(|v| v.iter().map(|z| z.to_c64()).collect())
    } else {
        let coeffs: Vec<MpComplex> = p.to_scalars(prec);
        aberth(&coeffs, prec).map(|v| v.iter().map(|z| z.to_c64()).collect())
    }
}

fn residual_ok(p: &UniPoly, roots: &[Complex64], tol: f64) -> bool {
    let scale = p
        .coeffs()
        .iter()
        .map(|c| c.to_c64().norm())
        .fold(0.0f64, f64::max);
    roots.iter().all(|&z| {
        let v = p.evaluate_c64(z).norm();
        let local = scale * (1.0 + z.norm()).powi(p.deg().unwrap_or(0) as i32);
        v <= tol * local.max(1.0)
    })
}

fn separated(roots: &[Complex64], tol: f64) -> bool {
    for i in 0..roots.len() {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() < tol {
                return false;
            }
        }
    }
    true
}

/// Roots of a squarefree exact polynomial, walking the precision ladder
/// until residual and separation tolerances hold.
pub fn squarefree_roots(p: &UniPoly, min_prec: u32) -> Result<Vec<Complex64>> {
    if p.deg().map_or(true, |d| d == 0) {
        return Ok(vec![]);
    }
    let mut last_err = None;
    for &prec in PRECISION_LADDER.iter().filter(|&&q| q >= min_prec) {
        match roots_at_precision(p, prec) {
            Ok(roots) => {
                if residual_ok(p, &roots, 1e-10) && separated(&roots, SEPARATION_TOL) {
                    return Ok(roots);
                }
                last_err = Some(Error::Numerical(
                    "residual or separation tolerance not met".into(),
                ));
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Numerical("root finding failed".into())))
}

/// All roots with multiplicities; the multiplicity structure comes from the
/// exact squarefree decomposition only.
pub fn complex_roots(p: &UniPoly, min_prec: u32) -> Result<Vec<(Complex64, usize)>> {
    if p.deg().map_or(true, |d| d == 0) {
        return Err(Error::Degenerate("root finding needs degree >= 1".into()));
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        for z in squarefree_roots(&factor, min_prec)? {
            out.push((z, mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Polish a single root by Newton iteration on an exact polynomial.
pub fn newton_polish<S: Scalar>(p: &UniPoly, z0: Complex64, prec: u32) -> S {
    let coeffs: Vec<S> = p.to_scalars(prec);
    let mut z = S::from_c64(z0, prec);
    let eps = if prec <= 53 {
        1e-15
    } else {
        2f64.powi(-(prec as i32) + 4)
    };
    for _ in 0..64 {
        let (v, dv) = eval_and_derivative(&coeffs, &z);
        if dv.abs() == 0.0 {
            break;
        }
        let step = v.div(&dv);
        z = z.sub(&step);
        if step.abs() < eps * (1.0 + z.abs()) {
            break;
        }
    }
    z
}
