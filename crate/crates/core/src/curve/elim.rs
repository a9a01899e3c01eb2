//! Zero-dimensional polynomial system solving by resultant elimination.
//!
//! Solutions are found chartwise: points at infinity come from the exact gcd
//! of the forms restricted to `Z = 0`, affine points from pairwise
//! resultants in `x` followed by exact back-substitution. Roots are kept
//! exact whenever they are rational or quadratic over the rationals; the
//! rest stay numeric.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ext::{rationalize_f64, Ext};
use crate::poly::bi::{resultant_x, BiPoly};
use crate::poly::hom::HomPoly;
use crate::poly::roots::squarefree_roots;
use crate::poly::uni::UniPoly;

use super::point::{ProjectivePoint, POINT_TOL};

/// A root that is either exact or known only numerically.
#[derive(Clone, Debug)]
pub enum RootVal {
    Exact(Ext),
    Numeric(Complex64),
}

impl RootVal {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            RootVal::Exact(e) => e.to_c64(),
            RootVal::Numeric(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&Ext> {
        match self {
            RootVal::Exact(e) => Some(e),
            RootVal::Numeric(_) => None,
        }
    }
}

const RAT_MAX_DEN: u64 = 1_000_000_000_000;
const RAT_TOL: f64 = 1e-8;

/// Distinct roots of a polynomial with rational coefficients, exact where
/// the root is rational or quadratic, numeric otherwise.
pub fn exact_roots(h: &UniPoly) -> Result<Vec<RootVal>> {
    debug_assert!(h.is_rational());
    let mut out = Vec::new();
    for (factor, _) in h.squarefree_decomposition() {
        if factor.deg().map_or(true, |d| d == 0) {
            continue;
        }
        out.extend(exact_roots_squarefree(&factor)?);
    }
    Ok(out)
}

fn exact_roots_squarefree(h: &UniPoly) -> Result<Vec<RootVal>> {
    // fast exact paths for low degree
    if h.deg() == Some(1) {
        let r = -h.coeff(0) / h.coeff(1);
        return Ok(vec![RootVal::Exact(r)]);
    }
    if h.deg() == Some(2) {
        if let (Some(a), Some(b), Some(c)) = (
            h.coeff(2).as_rational().cloned(),
            h.coeff(1).as_rational().cloned(),
            h.coeff(0).as_rational().cloned(),
        ) {
            let p = &b / &a;
            let q = &c / &a;
            let delta = &p * &p - BigRational::from_integer(4.into()) * q;
            let half = BigRational::new(1.into(), 2.into());
            let r1 = Ext::new(-&p * &half, half.clone(), delta.clone());
            let r2 = Ext::new(-&p * &half, -half, delta);
            return Ok(vec![RootVal::Exact(r1), RootVal::Exact(r2)]);
        }
    }

    let roots = squarefree_roots(h, 53)?;
    let n = roots.len();
    let mut claimed = vec![false; n];
    let mut out = Vec::with_capacity(n);

    // pass 1: rational roots
    for (i, z) in roots.iter().enumerate() {
        if z.im.abs() < 1e-9 {
            if let Some(q) = rationalize_f64(z.re, RAT_MAX_DEN, RAT_TOL) {
                let cand = Ext::from_rational(q);
                if h.evaluate(&cand).is_zero() {
                    claimed[i] = true;
                    out.push(RootVal::Exact(cand));
                }
            }
        }
    }
    // pass 2: quadratic pairs (conjugate pairs or real irrational pairs)
    for i in 0..n {
        if claimed[i] {
            continue;
        }
        for j in (i + 1)..n {
            if claimed[j] {
                continue;
            }
            let p = -(roots[i] + roots[j]);
            let q = roots[i] * roots[j];
            if p.im.abs() > 1e-7 || q.im.abs() > 1e-7 {
                continue;
            }
            let (Some(pr), Some(qr)) = (
                rationalize_f64(p.re, RAT_MAX_DEN, RAT_TOL),
                rationalize_f64(q.re, RAT_MAX_DEN, RAT_TOL),
            ) else {
                continue;
            };
            let quad = UniPoly::new(vec![
                Ext::from_rational(qr.clone()),
                Ext::from_rational(pr.clone()),
                Ext::one(),
            ]);
            if !quad.divides(h) {
                continue;
            }
            let delta = &pr * &pr - BigRational::from_integer(4.into()) * &qr;
            let half = BigRational::new(1.into(), 2.into());
            let mut r1 = Ext::new(-&pr * &half, half.clone(), delta.clone());
            let mut r2 = Ext::new(-&pr * &half, -half, delta);
            // keep pairing with the numeric roots stable
            if (r1.to_c64() - roots[i]).norm() > (r2.to_c64() - roots[i]).norm() {
                std::mem::swap(&mut r1, &mut r2);
            }
            claimed[i] = true;
            claimed[j] = true;
            out.push(RootVal::Exact(r1));
            out.push(RootVal::Exact(r2));
            break;
        }
    }
    // pass 3: whatever is left stays numeric
    for (i, z) in roots.iter().enumerate() {
        if !claimed[i] {
            out.push(RootVal::Numeric(*z));
        }
    }
    Ok(out)
}

/// Distinct roots of a polynomial whose coefficients may involve a square
/// root; exact for degree 1, numeric otherwise (rational coefficients take
/// the full exact path).
pub fn roots_any(h: &UniPoly) -> Result<Vec<RootVal>> {
    if h.is_rational() {
        return exact_roots(h);
    }
    if h.deg() == Some(1) {
        return Ok(vec![RootVal::Exact(-h.coeff(0) / h.coeff(1))]);
    }
    Ok(squarefree_roots(&h.squarefree_part(), 53)?
        .into_iter()
        .map(RootVal::Numeric)
        .collect())
}

fn gcd_all(polys: &[UniPoly]) -> UniPoly {
    let mut g = UniPoly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = if g.is_zero() { p.clone() } else { g.gcd(p) };
    }
    g
}

fn make_point(x: &RootVal, y: &RootVal, chart: usize) -> ProjectivePoint {
    let assemble_exact = |x: &Ext, y: &Ext| -> Option<[Ext; 3]> {
        // both must live in the same quadratic field (or be rational)
        let dx = x.radicand();
        let dy = y.radicand();
        if !dx.is_zero() && !dy.is_zero() && dx != dy {
            return None;
        }
        let one = Ext::one();
        Some(match chart {
            2 => [x.clone(), y.clone(), one],
            0 => [one, x.clone(), y.clone()],
            _ => [x.clone(), one, y.clone()],
        })
    };
    if let (RootVal::Exact(xe), RootVal::Exact(ye)) = (x, y) {
        if let Some(coords) = assemble_exact(xe, ye) {
            return ProjectivePoint::from_exact(coords);
        }
    }
    let (xc, yc) = (x.to_c64(), y.to_c64());
    let one = Complex64::new(1.0, 0.0);
    ProjectivePoint::from_c64(match chart {
        2 => [xc, yc, one],
        0 => [one, xc, yc],
        _ => [xc, one, yc],
    })
}

/// Solve an affine zero-dimensional system; returns `(x, y)` pairs.
fn affine_solve(polys: &[BiPoly]) -> Result<Vec<(RootVal, RootVal)>> {
    let live: Vec<&BiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if live.len() < 2 {
        return Err(Error::Degenerate(
            "system needs at least two nonzero equations".into(),
        ));
    }
    let (with_x, y_only): (Vec<&&BiPoly>, Vec<&&BiPoly>) =
        live.iter().partition(|p| p.deg_x().unwrap_or(0) > 0);
    if with_x.is_empty() {
        let cs: Vec<UniPoly> = y_only.iter().map(|p| p.coeffs_x()[0].clone()).collect();
        let g = gcd_all(&cs);
        if g.deg().map_or(false, |d| d > 0) {
            return Err(Error::Degenerate(
                "solution set is positive-dimensional (no x constraint)".into(),
            ));
        }
        return Ok(vec![]);
    }

    // y-constraints: direct y-only equations plus resultants against a base
    let mut y_constraints: Vec<UniPoly> = y_only
        .iter()
        .map(|p| p.coeffs_x()[0].clone())
        .collect();
    if with_x.len() == 1 && y_constraints.is_empty() {
        return Err(Error::Degenerate(
            "underdetermined system (single equation)".into(),
        ));
    }
    // pairwise resultants; a vanishing resultant only says that one pair
    // shares a component, so it is skipped rather than fatal
    for base in 0..with_x.len() {
        let mut any = false;
        for i in (base + 1)..with_x.len() {
            let r = resultant_x(with_x[base], with_x[i])?;
            if !r.is_zero() {
                y_constraints.push(r);
                any = true;
            }
        }
        if any && base == 0 {
            break;
        }
    }
    if y_constraints.is_empty() {
        return Err(Error::Degenerate(
            "equations share a common component".into(),
        ));
    }
    let g = gcd_all(&y_constraints);
    let Some(gd) = g.deg() else {
        return Ok(vec![]);
    };
    if gd == 0 {
        return Ok(vec![]);
    }

    let mut out = Vec::new();
    for y in roots_any(&g)? {
        match &y {
            RootVal::Exact(eta) => {
                let spec: Vec<UniPoly> = with_x.iter().map(|p| p.eval_y(eta)).collect();
                let gx = gcd_all(&spec);
                if gx.deg().map_or(true, |d| d == 0) {
                    continue; // spurious resultant root
                }
                for x in roots_any(&gx)? {
                    out.push((x, y.clone()));
                }
            }
            RootVal::Numeric(eta) => {
                let eta = *eta;
                let spec: Vec<Vec<Complex64>> = with_x
                    .iter()
                    .map(|p| {
                        p.coeffs_x()
                            .iter()
                            .map(|c| c.evaluate_c64(eta))
                            .collect()
                    })
                    .collect();
                // roots of the first, filtered by the residuals of the rest
                let mut base = spec[0].clone();
                while base.last().map(|c| c.norm() < 1e-10).unwrap_or(false) {
                    base.pop();
                }
                if base.len() < 2 {
                    continue;
                }
                let roots = crate::poly::roots::aberth(&base, 53)?;
                let scale: f64 = spec
                    .iter()
                    .flat_map(|cs| cs.iter().map(|c| c.norm()))
                    .fold(0.0, f64::max)
                    .max(1.0);
                for z in roots {
                    let ok = spec.iter().all(|cs| {
                        let v: Complex64 = cs
                            .iter()
                            .rev()
                            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
                        v.norm() < 1e-5 * scale * (1.0 + z.norm()).powi(base.len() as i32)
                    });
                    if ok {
                        out.push((RootVal::Numeric(z), y.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All common projective zeros of the given forms, assumed finite in number.
pub fn solve_system(polys: &[HomPoly]) -> Result<Vec<ProjectivePoint>> {
    let live: Vec<&HomPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if live.len() < 2 {
        return Err(Error::Degenerate(
            "system needs at least two nonzero forms".into(),
        ));
    }
    let mut points: Vec<ProjectivePoint> = Vec::new();
    let push = |p: ProjectivePoint, points: &mut Vec<ProjectivePoint>| {
        let dup = points.iter().position(|q| q.approx_eq(&p, POINT_TOL));
        match dup {
            // prefer an exact representative
            Some(i) => {
                if p.is_exact() && !points[i].is_exact() {
                    points[i] = p;
                }
            }
            None => points.push(p),
        }
    };

    // the point (1:0:0)
    if live
        .iter()
        .all(|p| p.coeff((p.degree(), 0, 0)).is_zero())
    {
        push(
            ProjectivePoint::from_exact([Ext::one(), Ext::zero(), Ext::zero()]),
            &mut points,
        );
    }
    // the rest of the line Z = 0: X-polynomials with Y = 1
    let zero = Ext::zero();
    let one = Ext::one();
    let at_inf: Vec<UniPoly> = live.iter().map(|p| p.specialize(0, [&one, &zero])).collect();
    let g_inf = gcd_all(&at_inf);
    if g_inf.is_zero() {
        return Err(Error::Degenerate(
            "forms share the whole line Z = 0".into(),
        ));
    }
    if g_inf.deg().map_or(false, |d| d > 0) {
        for x in roots_any(&g_inf)? {
            let p = match x.exact() {
                Some(e) => ProjectivePoint::from_exact([e.clone(), Ext::one(), Ext::zero()]),
                None => ProjectivePoint::from_c64([
                    x.to_c64(),
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                ]),
            };
            push(p, &mut points);
        }
    }

    // affine chart Z = 1
    let affine: Vec<BiPoly> = live
        .iter()
        .map(|p| BiPoly::new(p.dehomogenize(2)))
        .collect();
    for (x, y) in affine_solve(&affine)? {
        push(make_point(&x, &y, 2), &mut points);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_hompoly;

    fn pt(a: i64, b: i64, c: i64) -> ProjectivePoint {
        ProjectivePoint::from_exact([Ext::from_int(a), Ext::from_int(b), Ext::from_int(c)])
    }

    #[test]
    fn exact_rational_roots() {
        // (x - 2)(x + 3)
        let h = UniPoly::from_ints(&[-6, 1, 1]);
        let roots = exact_roots(&h).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.exact().is_some()));
    }

    #[test]
    fn quadratic_irrational_roots() {
        // x^2 - 3: roots +-sqrt(3), exact in Q(sqrt 3)
        let h = UniPoly::from_ints(&[-3, 0, 1]);
        let roots = exact_roots(&h).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let e = r.exact().unwrap();
            assert!((e.clone() * e.clone()).is_rational());
            assert!((r.to_c64().re.abs() - 3f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn complex_quadratic_roots() {
        // x^2 + 1: exact roots +-i = +-sqrt(-1)
        let h = UniPoly::from_ints(&[1, 0, 1]);
        let roots = exact_roots(&h).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.exact().is_some()));
        assert!((roots[0].to_c64().im.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_meets_line() {
        // X^2 + Y^2 - Z^2 = 0 and X - Y = 0: points (1:1:±√2)
        let f = parse_hompoly("X^2 + Y^2 - Z^2").unwrap();
        let l = parse_hompoly("X - Y").unwrap();
        let pts = solve_system(&[f.clone(), l]).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            let c = p.coords();
            assert!((c[0] * c[0] + c[1] * c[1] - c[2] * c[2]).norm() < 1e-9);
        }
    }

    #[test]
    fn fermat_gradient_has_no_common_zero() {
        let f = parse_hompoly("X^3 + Y^3 + Z^3").unwrap();
        let pts = solve_system(&f.gradient()).unwrap();
        assert!(pts.is_empty(), "Fermat cubic is smooth: {pts:?}");
    }

    #[test]
    fn nodal_cubic_singularity() {
        let f = parse_hompoly("X^2*Z + Y^3 + Y^2*Z").unwrap();
        let pts = solve_system(&f.gradient()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0], pt(0, 0, 1));
        assert!(pts[0].is_exact());
    }

    #[test]
    fn cuspidal_cubic_singularity_at_infinity() {
        // X^3 - Y Z^2: singular point (0:1:0)
        let f = parse_hompoly("X^3 - Y*Z^2").unwrap();
        let pts = solve_system(&f.gradient()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0], pt(0, 1, 0));
    }
}
