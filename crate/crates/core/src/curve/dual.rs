//! Dual curves by numeric interpolation with exact certification.
//!
//! The defining polynomial of `C*` is recovered from dual images of sampled
//! curve points: a null vector of the monomial evaluation matrix is
//! rationalized by continued fractions and certified by the exact
//! divisibility `D(F_X, F_Y, F_Z) = 0 mod F`. Certification failure first
//! escalates the working precision, then falls back to a numeric-only
//! result carrying an explicit flag.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::bigfloat::{MpComplex, Scalar};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::linalg::{kernel_vector, Mat3};
use crate::poly::bi::BiPoly;
use crate::poly::hom::HomPoly;
use crate::poly::roots::aberth;

use super::point::ProjectivePoint;
use super::{PlaneCurve, SingClass};

/// Result of a dual-curve computation.
#[derive(Clone, Debug)]
pub struct DualCurve {
    /// Defining polynomial of `C*` in the dual coordinates `(U, V, W)`.
    pub poly: HomPoly,
    pub degree: usize,
    /// Whether the exact divisibility certificate succeeded; when false the
    /// polynomial is a rationalized numeric fit only.
    pub exact_verified: bool,
    /// Full curve analysis of `C*`, available when certification succeeded.
    pub curve: Option<PlaneCurve>,
}

/// The image of a smooth curve point under the dual map (the tangent line,
/// read as a point of the dual plane).
pub fn dual_point(c: &PlaneCurve, q: &ProjectivePoint) -> Result<ProjectivePoint> {
    c.tangent_line(q)
}

/// Plücker-style estimate of `deg C*` from classified singularities; `None`
/// when an unclassified singular point blocks the count.
pub fn dual_degree_estimate(c: &PlaneCurve) -> Option<usize> {
    let d = c.degree();
    let mut total = d * (d - 1);
    for s in c.singular_points() {
        let corr = match s.class {
            SingClass::Node => 2,
            SingClass::Cusp => 3,
            SingClass::Ordinary(m) => m * (m - 1),
            SingClass::Unclassified => return None,
        };
        total = total.checked_sub(corr)?;
    }
    Some(total)
}

/// Monomial exponents of total degree `deg`, in deterministic order.
pub fn monomials_of_degree(deg: usize) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in (0..=deg).rev() {
        for j in (0..=(deg - i)).rev() {
            out.push((i as u32, j as u32, (deg - i - j) as u32));
        }
    }
    out
}

/// An exact rational point off the curve, used as the pencil center.
fn pencil_center(f: &HomPoly) -> [Ext; 3] {
    let cands: [[i64; 3]; 6] = [
        [0, 0, 1],
        [0, 1, 0],
        [1, 0, 0],
        [1, 1, 1],
        [1, 2, 3],
        [2, -1, 5],
    ];
    for c in cands {
        let p = [Ext::from_int(c[0]), Ext::from_int(c[1]), Ext::from_int(c[2])];
        if !f.evaluate(&p).is_zero() {
            return p;
        }
    }
    unreachable!("a nonzero form cannot vanish at all candidate points");
}

/// Sample smooth points of `C` by slicing with the pencil of lines through
/// an exact center, then push them through the dual map. Returns normalized
/// dual vectors.
fn sample_dual_points<S: Scalar>(
    c: &PlaneCurve,
    count: usize,
    prec: u32,
) -> Result<Vec<[S; 3]>> {
    let f = c.poly();
    let center = pencil_center(f);
    let grad = f.gradient();
    let scale = f
        .terms()
        .map(|(_, co)| co.to_c64().norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut out: Vec<[S; 3]> = Vec::new();
    let mut k: i64 = 1;
    while out.len() < count && k < 40 * count as i64 {
        // line through the center and the conic point (1 : k : k^2): a line
        // through any fixed center meets the conic at most twice, so the
        // pencil directions cannot collapse
        let other = [Ext::one(), Ext::from_int(k), Ext::from_int(k * k)];
        k += 1;
        let r = f.restrict_to_line(&center, &other);
        if r.is_zero() {
            continue;
        }
        // roots in t of F(center + t * other)
        let coeffs: Vec<S> = r.coeffs().iter().map(|co| S::from_ext(co, prec)).collect();
        let mut coeffs = coeffs;
        while coeffs.last().map(|co| co.abs() == 0.0).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            continue;
        }
        let Ok(roots) = aberth(&coeffs, prec) else {
            continue;
        };
        for t in roots {
            let p: [S; 3] = std::array::from_fn(|v| {
                S::from_ext(&center[v], prec).add(&t.mul(&S::from_ext(&other[v], prec)))
            });
            let g: [S; 3] = std::array::from_fn(|v| grad[v].evaluate_scalar(&p, prec));
            let gnorm = g.iter().map(|x| x.abs()).fold(0.0f64, f64::max);
            let pnorm = p.iter().map(|x| x.abs()).fold(1.0f64, f64::max);
            if gnorm < 1e-6 * scale * pnorm.powi(f.degree() as i32) {
                continue; // too close to a singular point
            }
            // normalize by the largest entry
            let lead = g
                .iter()
                .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
                .unwrap()
                .clone();
            let sample: [S; 3] = std::array::from_fn(|v| g[v].div(&lead));
            // repeated dual points starve the interpolation of rank
            let dup = out.iter().any(|prev: &[S; 3]| {
                prev.iter()
                    .zip(&sample)
                    .map(|(a, b)| a.sub(b).abs())
                    .sum::<f64>()
                    < 1e-9
            });
            if dup {
                continue;
            }
            out.push(sample);
            if out.len() >= count {
                break;
            }
        }
    }
    if out.len() < count {
        return Err(Error::Numerical(format!(
            "could not sample enough dual points ({}/{count})",
            out.len()
        )));
    }
    Ok(out)
}

/// Fit a degree-`deg` form through the dual samples and rationalize it.
fn fit_dual_poly<S: Scalar>(
    samples: &[[S; 3]],
    deg: usize,
    prec: u32,
    rank_tol: f64,
    max_den: &BigInt,
) -> Option<HomPoly> {
    let monos = monomials_of_degree(deg);
    let rows: Vec<Vec<S>> = samples
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|&(i, j, k)| {
                    let mut t = S::from_c64(Complex64::new(1.0, 0.0), prec);
                    for _ in 0..i {
                        t = t.mul(&p[0]);
                    }
                    for _ in 0..j {
                        t = t.mul(&p[1]);
                    }
                    for _ in 0..k {
                        t = t.mul(&p[2]);
                    }
                    t
                })
                .collect()
        })
        .collect();
    let kernel = kernel_vector(&rows, monos.len(), prec, rank_tol)?;
    // residual sanity on the fit itself
    let worst = rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(&kernel)
                .fold(S::from_c64(Complex64::new(0.0, 0.0), prec), |acc, (a, x)| {
                    acc.add(&a.mul(x))
                })
                .abs()
        })
        .fold(0.0f64, f64::max);
    let kscale = kernel.iter().map(|x| x.abs()).fold(0.0f64, f64::max);
    if kscale == 0.0 || worst > rank_tol.sqrt() * kscale * samples.len() as f64 {
        return None;
    }
    // normalize by the largest entry, then rationalize
    let lead = kernel
        .iter()
        .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
        .unwrap()
        .clone();
    let mut terms = Vec::new();
    for (e, x) in monos.iter().zip(&kernel) {
        let q = x.div(&lead).approx_rational(max_den)?;
        terms.push((*e, Ext::from_rational(q)));
    }
    HomPoly::from_terms(terms, deg as u32).ok()
}

/// Exact divisibility of homogeneous forms: does `a` divide `b`?
pub fn hompoly_divides(a: &HomPoly, b: &HomPoly) -> bool {
    if b.is_zero() {
        return true;
    }
    if a.is_zero() || a.degree() > b.degree() {
        return false;
    }
    // shear so `a` carries a pure X^deg term, making the dehomogenized
    // division denominator-free; divisibility is shear-invariant
    let d = a.degree();
    let mut shear = Mat3::identity();
    'search: for s in 0..5i64 {
        for t in 0..5i64 {
            let p = [Ext::one(), Ext::from_int(s), Ext::from_int(t)];
            if !a.evaluate(&p).is_zero() {
                shear = Mat3::from_rows([
                    [Ext::one(), Ext::zero(), Ext::zero()],
                    [Ext::from_int(s), Ext::one(), Ext::zero()],
                    [Ext::from_int(t), Ext::zero(), Ext::one()],
                ]);
                break 'search;
            }
        }
    }
    let asx = a.transform(&shear);
    let bsx = b.transform(&shear);
    debug_assert!(!asx.coeff((d, 0, 0)).is_zero());
    let ab = BiPoly::new(asx.dehomogenize(2));
    let bb = BiPoly::new(bsx.dehomogenize(2));
    bb.rem_x(&ab).is_zero()
}

/// Exact certificate: `D(F_X, F_Y, F_Z)` divisible by `F`.
pub fn certify_dual(f: &HomPoly, d_poly: &HomPoly) -> Result<bool> {
    if d_poly.is_zero() {
        return Ok(false);
    }
    let g = d_poly.compose(&f.gradient());
    Ok(hompoly_divides(f, &g))
}

/// Compute the dual curve of `C`.
pub fn dual_curve(c: &PlaneCurve) -> Result<DualCurve> {
    let d = c.degree();
    let max_deg = d * (d - 1);
    let mut candidates: Vec<usize> = match dual_degree_estimate(c) {
        Some(est) => {
            let mut v = vec![est];
            for off in 1..=3usize {
                if est >= 2 + off {
                    v.push(est - off);
                }
                if est + off <= max_deg {
                    v.push(est + off);
                }
            }
            v
        }
        None => (2..=max_deg).collect(),
    };
    candidates.retain(|&deg| (2..=max_deg).contains(&deg));

    let mut numeric_fallback: Option<(HomPoly, usize)> = None;
    for &prec in &[53u32, 212] {
        for &deg in &candidates {
            let need = (deg + 1) * (deg + 2) / 2 + 20;
            let fitted = if prec <= 53 {
                let samples = match sample_dual_points::<Complex64>(c, need, prec) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                fit_dual_poly(&samples, deg, prec, 1e-7, &BigInt::from(1_000_000u64))
            } else {
                let samples = match sample_dual_points::<MpComplex>(c, need, prec) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                fit_dual_poly(
                    &samples,
                    deg,
                    prec,
                    1e-40,
                    &(BigInt::from(1u8) << 128u32),
                )
            };
            let Some(d_poly) = fitted else { continue };
            let d_poly = d_poly.content_normalized();
            if certify_dual(c.poly(), &d_poly)? {
                let curve = PlaneCurve::new(d_poly.clone()).ok();
                return Ok(DualCurve {
                    poly: d_poly,
                    degree: deg,
                    exact_verified: true,
                    curve,
                });
            }
            if numeric_fallback.is_none() {
                numeric_fallback = Some((d_poly, deg));
            }
        }
    }
    match numeric_fallback {
        Some((poly, degree)) => Ok(DualCurve {
            poly,
            degree,
            exact_verified: false,
            curve: None,
        }),
        None => Err(Error::Numerical(
            "dual-curve interpolation failed at every candidate degree".into(),
        )),
    }
}

/// Resultant-elimination oracle for cubic duals: eliminate the curve
/// parameters from the incidence system. Used as an independent cross-check
/// of the interpolated dual at `d = 3`.
pub fn dual_cubic_by_elimination(c: &PlaneCurve) -> Result<HomPoly> {
    if c.degree() != 3 {
        return Err(Error::Unsupported(
            "elimination oracle only implemented for cubics".into(),
        ));
    }
    // The dual point of (x, y, 1) is the gradient; eliminate (x, y) from
    //   F(x, y, 1) = 0,
    //   U * F_y(x,y,1) - V * F_x(x,y,1) = 0,
    //   W = -(x * U + y * V) (line through the point with normal (U,V))
    // Instead we use the classical approach: C* = { (U:V:W) : the line
    // U X + V Y + W Z = 0 is tangent to C }, i.e. the discriminant of the
    // restriction of F to the line vanishes.
    //
    // Parameterize the line by two points depending rationally on (U, V, W),
    // valid on the chart U != 0, and clear denominators afterwards.
    // Restriction nodes: P1 = (-V, U, 0), P2 = (-W, 0, U).
    // F(s*P1 + t*P2) is a binary cubic in (s, t) whose coefficients are
    // polynomials in (U, V, W); tangency <=> discriminant vanishes.
    let f = c.poly();
    // binary cubic coefficients as HomPolys in (U, V, W)
    // expand F(s*(-V, U, 0) + t*(-W, 0, U)) symbolically
    let d = 3usize;
    let mut coeffs: Vec<HomPoly> = vec![HomPoly::zero(0); d + 1];
    let mut first = vec![true; d + 1];
    let p1 = [
        HomPoly::monomial((0, 1, 0), Ext::from_int(-1)),
        HomPoly::monomial((1, 0, 0), Ext::one()),
        HomPoly::zero(1),
    ];
    let p2 = [
        HomPoly::monomial((0, 0, 1), Ext::from_int(-1)),
        HomPoly::zero(1),
        HomPoly::monomial((1, 0, 0), Ext::one()),
    ];
    for (&(i, j, k), co) in f.terms() {
        // (s*p1v + t*p2v)^e expands binomially; collect per power of t
        let mut term: Vec<HomPoly> = vec![HomPoly::monomial((0, 0, 0), co.clone())];
        for (v, &e) in [i, j, k].iter().enumerate() {
            for _ in 0..e {
                let mut next: Vec<HomPoly> = vec![HomPoly::zero(0); term.len() + 1];
                let mut init = vec![true; term.len() + 1];
                for (t_pow, val) in term.iter().enumerate() {
                    for (slot, factor) in [(t_pow, &p1[v]), (t_pow + 1, &p2[v])] {
                        let prod = val.mul(factor);
                        if init[slot] {
                            next[slot] = prod;
                            init[slot] = false;
                        } else {
                            next[slot] = next[slot].add(&prod);
                        }
                    }
                }
                term = next;
            }
        }
        for (t_pow, val) in term.into_iter().enumerate() {
            if first[t_pow] {
                coeffs[t_pow] = val;
                first[t_pow] = false;
            } else {
                coeffs[t_pow] = coeffs[t_pow].add(&val);
            }
        }
    }
    // discriminant of the binary cubic a3 t^3 + a2 t^2 + a1 t + a0 (in the
    // dehomogenized variable): 18*a3*a2*a1*a0 - 4*a2^3*a0 + a2^2*a1^2
    // - 4*a3*a1^3 - 27*a3^2*a0^2
    let (a0, a1, a2, a3) = (&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]);
    let c18 = |p: HomPoly| p.scale(&Ext::from_int(18));
    let disc = c18(a3.mul(a2).mul(a1).mul(a0))
        .sub(&a2.mul(a2).mul(a2).mul(a0).scale(&Ext::from_int(4)))
        .add(&a2.mul(a2).mul(&a1.mul(a1)))
        .sub(&a3.mul(a1).mul(a1).mul(a1).scale(&Ext::from_int(4)))
        .sub(&a3.mul(a3).mul(&a0.mul(a0)).scale(&Ext::from_int(27)));
    // the parameterization degenerates on U = 0; spurious U-power factors
    // divide out
    let mut out = disc;
    loop {
        let all_div = out.terms().all(|(&e, _)| e.0 > 0) && !out.is_zero();
        if !all_div {
            break;
        }
        let reduced = HomPoly::from_terms(
            out.terms().map(|(&(i, j, k), c2)| ((i - 1, j, k), c2.clone())),
            out.degree().saturating_sub(1),
        )?;
        out = reduced;
    }
    Ok(out.content_normalized())
}
