//! Plane curves: singular loci, flexes, tangency, and line incidence.

pub mod dual;
pub mod elim;
pub mod point;

pub use elim::{exact_roots, roots_any, solve_system, RootVal};
pub use point::{ProjectivePoint, POINT_TOL};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::poly::binary::binary_factor_profile;
use crate::poly::hom::HomPoly;
use crate::poly::uni::UniPoly;

/// Local type of a singular point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingClass {
    Node,
    Cusp,
    /// Ordinary point of the given multiplicity (squarefree tangent cone).
    Ordinary(usize),
    Unclassified,
}

impl SingClass {
    /// Delta invariant, when the classification determines it.
    pub fn delta(&self) -> Option<usize> {
        match self {
            SingClass::Node | SingClass::Cusp => Some(1),
            SingClass::Ordinary(m) => Some(m * (m - 1) / 2),
            SingClass::Unclassified => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            SingClass::Node => "node".into(),
            SingClass::Cusp => "cusp".into(),
            SingClass::Ordinary(m) => format!("ordinary-{m}-fold"),
            SingClass::Unclassified => "unclassified".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub point: ProjectivePoint,
    pub multiplicity: usize,
    pub class: SingClass,
}

/// An irreducible plane curve of degree at least 3 over the rationals.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    f: HomPoly,
    singular: Vec<SingularPoint>,
    flexes: Vec<ProjectivePoint>,
    genus: Option<usize>,
}

/// One line cut against a curve: intersection points with multiplicities.
#[derive(Clone, Debug)]
pub struct LineProfile {
    pub line: [Ext; 3],
    /// `(point, is_singular, intersection multiplicity)`
    pub intersections: Vec<(ProjectivePoint, bool, usize)>,
}

impl PlaneCurve {
    pub fn new(f: HomPoly) -> Result<Self> {
        let f = f.content_normalized();
        if f.degree() < 3 {
            return Err(Error::Degenerate(format!(
                "degree {} < 3 is out of scope",
                f.degree()
            )));
        }
        if !f.is_rational() {
            return Err(Error::Degenerate(
                "curve coefficients must be rational".into(),
            ));
        }
        check_irreducible(&f)?;
        let singular = classify_singular_locus(&f)?;
        let flexes = find_flexes(&f, &singular)?;
        let d = f.degree() as usize;
        let genus = singular
            .iter()
            .map(|s| s.class.delta())
            .try_fold((d - 1) * (d - 2) / 2, |g, delta| {
                delta.and_then(|dl| g.checked_sub(dl))
            });
        Ok(PlaneCurve {
            f,
            singular,
            flexes,
            genus,
        })
    }

    pub fn poly(&self) -> &HomPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree() as usize
    }

    pub fn singular_points(&self) -> &[SingularPoint] {
        &self.singular
    }

    pub fn flexes(&self) -> &[ProjectivePoint] {
        &self.flexes
    }

    pub fn genus(&self) -> Option<usize> {
        self.genus
    }

    pub fn is_smooth(&self) -> bool {
        self.singular.is_empty()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        match p.exact() {
            Some(e) => self.f.evaluate(e).is_zero(),
            None => {
                let scale = coeff_scale(&self.f);
                self.f.evaluate_c64(p.coords()).norm() < 1e-7 * scale
            }
        }
    }

    /// Multiplicity of the curve at `p` (0 off the curve, 1 at smooth points).
    pub fn multiplicity_at(&self, p: &ProjectivePoint) -> usize {
        match p.exact() {
            Some(e) => {
                let (grid, _) = translate_to_origin(&self.f, e);
                lowest_order(&grid)
            }
            None => {
                if !self.contains(p) {
                    return 0;
                }
                self.singular
                    .iter()
                    .find(|s| s.point.approx_eq(p, POINT_TOL))
                    .map(|s| s.multiplicity)
                    .unwrap_or(1)
            }
        }
    }

    /// Tangent line at a smooth point, as dual coordinates.
    pub fn tangent_line(&self, q: &ProjectivePoint) -> Result<ProjectivePoint> {
        if !self.contains(q) {
            return Err(Error::OffLocus("tangent line needs a point on the curve".into()));
        }
        let grad = self.f.gradient();
        match q.exact() {
            Some(e) => {
                let g: Vec<Ext> = grad.iter().map(|d| d.evaluate(e)).collect();
                if g.iter().all(|c| c.is_zero()) {
                    return Err(Error::SingularCenter(format!(
                        "gradient vanishes at {q}"
                    )));
                }
                Ok(ProjectivePoint::from_exact([
                    g[0].clone(),
                    g[1].clone(),
                    g[2].clone(),
                ]))
            }
            None => {
                let g: Vec<Complex64> = grad.iter().map(|d| d.evaluate_c64(q.coords())).collect();
                let scale = coeff_scale(&self.f);
                if g.iter().all(|c| c.norm() < 1e-7 * scale) {
                    return Err(Error::SingularCenter(format!(
                        "gradient vanishes at {q}"
                    )));
                }
                Ok(ProjectivePoint::from_c64([g[0], g[1], g[2]]))
            }
        }
    }

    /// Intersection multiplicity of the curve with a line at a common point.
    pub fn intersection_multiplicity(
        &self,
        line: &ProjectivePoint,
        q: &ProjectivePoint,
    ) -> Result<usize> {
        if !self.contains(q) {
            return Err(Error::OffLocus("point not on the curve".into()));
        }
        match (line.exact(), q.exact()) {
            (Some(l), Some(qe)) => {
                let dot = l[0].clone() * qe[0].clone()
                    + l[1].clone() * qe[1].clone()
                    + l[2].clone() * qe[2].clone();
                if !dot.is_zero() {
                    return Err(Error::OffLocus("point not on the line".into()));
                }
                let other = second_point_on_line(l, qe);
                let r = self.f.restrict_to_line(qe, &other);
                if r.is_zero() {
                    return Err(Error::Degenerate("line is contained in the curve".into()));
                }
                Ok(r.order_at_first_point())
            }
            _ => {
                // numeric path: restrict along the line through q in the
                // direction of a numeric second point
                let l = line.coords();
                let qc = q.coords();
                let dot = l[0] * qc[0] + l[1] * qc[1] + l[2] * qc[2];
                if dot.norm() > 1e-6 {
                    return Err(Error::OffLocus("point not on the line".into()));
                }
                let dir = second_point_on_line_c64(l, qc);
                let d = self.degree();
                // exact-degree interpolation of t -> f(q + t*dir)
                let nodes: Vec<Complex64> = (0..=d)
                    .map(|k| {
                        Complex64::from_polar(
                            1.0,
                            2.0 * std::f64::consts::PI * k as f64 / (d + 1) as f64,
                        )
                    })
                    .collect();
                let vals: Vec<Complex64> = nodes
                    .iter()
                    .map(|t| {
                        self.f.evaluate_c64(&[
                            qc[0] + t * dir[0],
                            qc[1] + t * dir[1],
                            qc[2] + t * dir[2],
                        ])
                    })
                    .collect();
                let coeffs = interpolate_c64(&nodes, &vals);
                let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
                if scale == 0.0 {
                    return Err(Error::Degenerate("line is contained in the curve".into()));
                }
                let mut order = 0;
                while order < coeffs.len() && coeffs[order].norm() < 1e-6 * scale {
                    order += 1;
                }
                Ok(order)
            }
        }
    }

    /// Cut the curve with an exact line: all intersection points with
    /// multiplicities and singularity flags.
    pub fn line_profile(&self, line: &[Ext; 3]) -> Result<LineProfile> {
        let (p1, p2) = span_of_line(line)?;
        let r = self.f.restrict_to_line(&p1, &p2);
        if r.is_zero() {
            return Err(Error::Degenerate("line is contained in the curve".into()));
        }
        let profile = binary_factor_profile(&r)?;
        let mut intersections = Vec::new();
        for &(s, t, m) in &profile.factors {
            let coords = [
                s * c64(&p1[0]) + t * c64(&p2[0]),
                s * c64(&p1[1]) + t * c64(&p2[1]),
                s * c64(&p1[2]) + t * c64(&p2[2]),
            ];
            let pt = ProjectivePoint::from_c64(coords);
            // upgrade to an exact point when it coincides with a known one
            let pt = self
                .singular
                .iter()
                .map(|sp| &sp.point)
                .chain(self.flexes.iter())
                .find(|k| k.approx_eq(&pt, POINT_TOL))
                .cloned()
                .unwrap_or(pt);
            let is_sing = self
                .singular
                .iter()
                .any(|sp| sp.point.approx_eq(&pt, POINT_TOL));
            intersections.push((pt, is_sing, m));
        }
        Ok(LineProfile {
            line: line.clone(),
            intersections,
        })
    }
}

fn c64(e: &Ext) -> Complex64 {
    e.to_c64()
}

fn coeff_scale(f: &HomPoly) -> f64 {
    f.terms()
        .map(|(_, c)| c.to_c64().norm())
        .fold(0.0f64, f64::max)
        .max(1.0)
}

/// Numeric Newton interpolation through distinct nodes.
fn interpolate_c64(nodes: &[Complex64], vals: &[Complex64]) -> Vec<Complex64> {
    let n = nodes.len();
    let mut dd = vals.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    // expand the Newton form
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - nodes[i]) + dd[i]
        let mut next = vec![Complex64::new(0.0, 0.0); n];
        for k in (0..n - 1).rev() {
            next[k + 1] += coeffs[k];
            next[k] -= coeffs[k] * nodes[i];
        }
        next[0] += dd[i];
        coeffs = next;
    }
    coeffs
}

/// Two exact points spanning the line with coefficients `l`.
fn span_of_line(l: &[Ext; 3]) -> Result<([Ext; 3], [Ext; 3])> {
    let z = Ext::zero;
    if !l[2].is_zero() {
        Ok((
            [l[2].clone(), z(), -l[0].clone()],
            [z(), l[2].clone(), -l[1].clone()],
        ))
    } else if !l[1].is_zero() {
        Ok((
            [l[1].clone(), -l[0].clone(), z()],
            [z(), z(), Ext::one()],
        ))
    } else if !l[0].is_zero() {
        Ok(([z(), Ext::one(), z()], [z(), z(), Ext::one()]))
    } else {
        Err(Error::Degenerate("zero line".into()))
    }
}

/// Any exact point on the line `l` projectively distinct from `q`.
fn second_point_on_line(l: &[Ext; 3], q: &[Ext; 3]) -> [Ext; 3] {
    let (p1, p2) = span_of_line(l).expect("nonzero line");
    for cand in [&p1, &p2] {
        let mut indep = false;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let cross = cand[i].clone() * q[j].clone() - cand[j].clone() * q[i].clone();
                if !cross.is_zero() {
                    indep = true;
                }
            }
        }
        if indep {
            return cand.clone();
        }
    }
    // q spans with any independent combination
    [
        p1[0].clone() + p2[0].clone(),
        p1[1].clone() + p2[1].clone(),
        p1[2].clone() + p2[2].clone(),
    ]
}

fn second_point_on_line_c64(l: &[Complex64; 3], q: &[Complex64; 3]) -> [Complex64; 3] {
    // candidate basis of the line, pick the one most independent from q
    let cands = [
        [l[2], Complex64::new(0.0, 0.0), -l[0]],
        [Complex64::new(0.0, 0.0), l[2], -l[1]],
        [l[1], -l[0], Complex64::new(0.0, 0.0)],
    ];
    let indep = |c: &[Complex64; 3]| -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                s += (c[i] * q[j] - c[j] * q[i]).norm_sqr();
            }
        }
        let n: f64 = c.iter().map(|x| x.norm_sqr()).sum();
        if n == 0.0 {
            0.0
        } else {
            s / n
        }
    };
    *cands
        .iter()
        .max_by(|a, b| indep(a).partial_cmp(&indep(b)).unwrap())
        .unwrap()
}

/// Translate the curve so `p` sits at the origin of its best affine chart.
/// Returns the affine coefficient grid `a[i][j]` of `x^i y^j` and the chart
/// index used.
fn translate_to_origin(f: &HomPoly, p: &[Ext; 3]) -> (Vec<Vec<Ext>>, usize) {
    let chart = (0..3)
        .rev()
        .find(|&c| !p[c].is_zero())
        .expect("projective point");
    let (vx, vy) = match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let inv = p[chart].inv();
    let x0 = p[vx].clone() * inv.clone();
    let y0 = p[vy].clone() * inv;
    let cols = f.dehomogenize(chart);
    // shift y first, then x
    let shifted: Vec<UniPoly> = cols.iter().map(|c| c.taylor_shift(&y0)).collect();
    let n = shifted.len();
    let mut out_cols: Vec<UniPoly> = vec![UniPoly::zero(); n];
    for (i, col) in shifted.iter().enumerate() {
        // contribute col * (x + x0)^i
        let mut binom = vec![Ext::one()]; // coefficients of (x + x0)^i
        for _ in 0..i {
            let mut next = vec![Ext::zero(); binom.len() + 1];
            for (k, b) in binom.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + b.clone();
                next[k] = next[k].clone() + b.clone() * x0.clone();
            }
            binom = next;
        }
        for (k, b) in binom.iter().enumerate() {
            out_cols[k] = out_cols[k].add(&col.scale(b));
        }
    }
    let grid: Vec<Vec<Ext>> = out_cols
        .iter()
        .map(|c| c.coeffs().to_vec())
        .collect();
    (grid, chart)
}

/// Order of the lowest nonvanishing total-degree part of an affine grid.
fn lowest_order(grid: &[Vec<Ext>]) -> usize {
    let mut best = usize::MAX;
    for (i, col) in grid.iter().enumerate() {
        for (j, c) in col.iter().enumerate() {
            if !c.is_zero() {
                best = best.min(i + j);
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// The degree-`m` part of the grid as a univariate polynomial in the tangent
/// direction parameter `t` (coefficient of `x^i y^(m-i)` becomes `t^i`),
/// together with the coefficient count `m + 1`.
fn tangent_cone(grid: &[Vec<Ext>], m: usize) -> Vec<Ext> {
    let mut cone = vec![Ext::zero(); m + 1];
    for (i, col) in grid.iter().enumerate() {
        if i > m {
            continue;
        }
        let j = m - i;
        if let Some(c) = col.get(j) {
            cone[i] = c.clone();
        }
    }
    cone
}

fn check_irreducible(f: &HomPoly) -> Result<()> {
    // a form in fewer than three variables cuts out a cone (lines through a
    // coordinate point), never an irreducible curve of degree >= 3
    for v in 0..3 {
        let used = f.terms().any(|(&e, _)| {
            (match v {
                0 => e.0,
                1 => e.1,
                _ => e.2,
            }) > 0
        });
        if !used {
            return Err(Error::Degenerate(
                "polynomial uses fewer than three variables (cone)".into(),
            ));
        }
    }
    // coordinate-line factors
    let d = f.degree();
    for (v, name) in [(0usize, "X"), (1, "Y"), (2, "Z")] {
        let all_divisible = f.terms().all(|(&e, _)| {
            (match v {
                0 => e.0,
                1 => e.1,
                _ => e.2,
            }) > 0
        });
        if all_divisible {
            return Err(Error::Reducible {
                factor: name.to_string(),
            });
        }
    }
    // repeated factor (in x) via the exact discriminant; a y-only factor is
    // caught by the x-content check
    let bp = crate::poly::bi::BiPoly::new(f.dehomogenize(2));
    let content = {
        let mut g = UniPoly::zero();
        for c in bp.coeffs_x() {
            if !c.is_zero() {
                g = if g.is_zero() { c.clone() } else { g.gcd(c) };
            }
        }
        g
    };
    if content.deg().map_or(false, |dg| dg > 0) {
        return Err(Error::Reducible {
            factor: format!("a factor in Y, Z only (gcd of X-coefficients: {content:?})"),
        });
    }
    if bp.deg_x().unwrap_or(0) >= 2 {
        let disc = crate::poly::bi::discriminant_x(&bp)?;
        if disc.is_zero() {
            return Err(Error::Reducible {
                factor: "a repeated factor (vanishing discriminant)".into(),
            });
        }
    }
    // rational lines Y = w*X through (0:0:1)-free directions
    find_line_factor_y_eq_wx(f)?;
    // rational lines Z = u*X + v*Y
    find_line_factor_z(f, d)?;
    Ok(())
}

fn find_line_factor_y_eq_wx(f: &HomPoly) -> Result<()> {
    // f(X, wX, Z) = sum over k of e_k(w) X^(d-k) Z^k; a common rational root
    // w0 of all e_k exposes the factor Y - w0*X
    let mut e: Vec<UniPoly> = Vec::new();
    for (&(i, j, k), c) in f.terms() {
        let _ = i;
        let k = k as usize;
        if e.len() <= k {
            e.resize(k + 1, UniPoly::zero());
        }
        e[k] = e[k].add(&UniPoly::monomial(c.clone(), j as usize));
    }
    let mut g = UniPoly::zero();
    for p in &e {
        if !p.is_zero() {
            g = if g.is_zero() { p.clone() } else { g.gcd(p) };
        }
    }
    if g.deg().map_or(false, |d| d > 0) {
        for r in exact_roots(&g)? {
            if let Some(w0) = r.exact().and_then(|x| x.as_rational()) {
                return Err(Error::Reducible {
                    factor: format!("Y - ({w0})*X"),
                });
            }
        }
    }
    Ok(())
}

fn find_line_factor_z(f: &HomPoly, d: u32) -> Result<()> {
    // expand f(X, Y, uX + vY) = sum of e_ij(u, v) X^i Y^j
    use std::collections::BTreeMap;
    let mut e: BTreeMap<(u32, u32), BTreeMap<(usize, usize), Ext>> = BTreeMap::new();
    for (&(a, b, k), c) in f.terms() {
        let mut binom = vec![Ext::one()];
        for _ in 0..k {
            let mut next = vec![Ext::zero(); binom.len() + 1];
            for (t, bc) in binom.iter().enumerate() {
                next[t + 1] = next[t + 1].clone() + bc.clone();
                next[t] = next[t].clone() + bc.clone();
            }
            binom = next;
        }
        // (uX + vY)^k = sum_t C(k,t) u^t v^(k-t) X^t Y^(k-t)
        for (t, bc) in binom.iter().enumerate() {
            let key = (a + t as u32, b + k - t as u32);
            let entry = e.entry(key).or_default();
            let mono = (t, (k as usize) - t);
            let slot = entry.entry(mono).or_insert_with(Ext::zero);
            *slot = slot.clone() + c.clone() * bc.clone();
        }
    }
    // e_(d,0) is univariate in u
    let eu = poly_in_first(e.get(&(d, 0)));
    if eu.is_zero() {
        // Y divides f; already caught by the coordinate-line check
        return Ok(());
    }
    if eu.deg().map_or(true, |dg| dg == 0) {
        return Ok(());
    }
    'outer: for r in exact_roots(&eu)? {
        let Some(u0) = r.exact().cloned() else { continue };
        if !u0.is_rational() {
            continue;
        }
        // specialize u = u0 in every e_ij, leaving polynomials in v
        let mut specialized: Vec<UniPoly> = Vec::new();
        for grid in e.values() {
            let mut coeffs: Vec<Ext> = Vec::new();
            for (&(tu, tv), c) in grid {
                if coeffs.len() <= tv {
                    coeffs.resize(tv + 1, Ext::zero());
                }
                let mut up = c.clone();
                for _ in 0..tu {
                    up = up * u0.clone();
                }
                coeffs[tv] = coeffs[tv].clone() + up;
            }
            specialized.push(UniPoly::new(coeffs));
        }
        let mut g = UniPoly::zero();
        for p in &specialized {
            if !p.is_zero() {
                g = if g.is_zero() { p.clone() } else { g.gcd(p) };
            }
        }
        if g.is_zero() {
            // every coefficient vanished: cannot happen for nonzero f
            continue;
        }
        if g.deg().map_or(true, |dg| dg == 0) {
            continue 'outer;
        }
        for rv in exact_roots(&g)? {
            let Some(v0) = rv.exact().cloned() else { continue };
            if !v0.is_rational() {
                continue;
            }
            let all_zero = specialized
                .iter()
                .all(|p| p.evaluate(&v0).is_zero());
            if all_zero {
                return Err(Error::Reducible {
                    factor: format!("Z - ({})*X - ({})*Y", u0, v0),
                });
            }
        }
    }
    Ok(())
}

fn poly_in_first(grid: Option<&std::collections::BTreeMap<(usize, usize), Ext>>) -> UniPoly {
    let Some(grid) = grid else {
        return UniPoly::zero();
    };
    let mut coeffs: Vec<Ext> = Vec::new();
    for (&(tu, tv), c) in grid {
        debug_assert_eq!(tv, 0);
        if coeffs.len() <= tu {
            coeffs.resize(tu + 1, Ext::zero());
        }
        coeffs[tu] = coeffs[tu].clone() + c.clone();
    }
    UniPoly::new(coeffs)
}

fn classify_singular_locus(f: &HomPoly) -> Result<Vec<SingularPoint>> {
    let pts = solve_system(&f.gradient())?;
    let mut out = Vec::new();
    for p in pts {
        let (mult, class) = match p.exact() {
            Some(e) => {
                let (grid, chart) = translate_to_origin(f, e);
                let m = lowest_order(&grid);
                let class = classify_local(f, &p, &grid, m, chart);
                (m, class)
            }
            None => (2, SingClass::Unclassified),
        };
        out.push(SingularPoint {
            point: p,
            multiplicity: mult,
            class,
        });
    }
    Ok(out)
}

fn classify_local(
    f: &HomPoly,
    p: &ProjectivePoint,
    grid: &[Vec<Ext>],
    m: usize,
    chart: usize,
) -> SingClass {
    if m < 2 {
        return SingClass::Unclassified;
    }
    let cone = tangent_cone(grid, m);
    // cone as a univariate polynomial in the direction parameter
    let cu = UniPoly::new(cone.clone());
    let inf_mult = m - cu.deg().unwrap_or(0);
    let squarefree = inf_mult <= 1 && cu.gcd(&cu.derivative()).deg().unwrap_or(0) == 0;
    if m == 2 {
        if squarefree {
            return SingClass::Node;
        }
        // repeated tangent: cusp iff the tangent meets the curve to order 3
        if let Some(order) = tangent_contact_order(f, p, &cone, chart) {
            if order == 3 {
                return SingClass::Cusp;
            }
        }
        return SingClass::Unclassified;
    }
    if squarefree {
        return SingClass::Ordinary(m);
    }
    SingClass::Unclassified
}

/// Order of contact of the (repeated) tangent line with the curve at `p`.
fn tangent_contact_order(
    f: &HomPoly,
    p: &ProjectivePoint,
    cone: &[Ext],
    chart: usize,
) -> Option<usize> {
    // tangent cone c2*x^2 + c1*x*y + c0*y^2 with zero discriminant: the
    // doubled direction is (dx : dy) with dx = -c1/(2 c2), dy = 1 (or the
    // y-axis when c2 = 0)
    let (c1, c2) = (cone[1].clone(), cone[2].clone());
    let (dx, dy) = if !c2.is_zero() {
        (-c1 / (Ext::from_int(2) * c2), Ext::one())
    } else {
        // cone = c0 * y^2; the doubled tangent is y = 0, direction (1, 0)
        (Ext::one(), Ext::zero())
    };
    // the affine direction lifts to the chart's point at infinity, slotted
    // into the chart's variable order
    let dir = match chart {
        0 => [Ext::zero(), dx, dy],
        1 => [dx, Ext::zero(), dy],
        _ => [dx, dy, Ext::zero()],
    };
    let pe = p.exact()?;
    let r = f.restrict_to_line(pe, &dir);
    if r.is_zero() {
        return None;
    }
    Some(r.order_at_first_point())
}

fn find_flexes(f: &HomPoly, singular: &[SingularPoint]) -> Result<Vec<ProjectivePoint>> {
    let h = f.hessian_det();
    if h.is_zero() {
        return Ok(vec![]);
    }
    let pts = solve_system(&[f.clone(), h])?;
    Ok(pts
        .into_iter()
        .filter(|p| !singular.iter().any(|s| s.point.approx_eq(p, POINT_TOL)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_hompoly;

    fn curve(src: &str) -> PlaneCurve {
        PlaneCurve::new(parse_hompoly(src).unwrap()).unwrap()
    }

    fn pt(a: i64, b: i64, c: i64) -> ProjectivePoint {
        ProjectivePoint::from_exact([Ext::from_int(a), Ext::from_int(b), Ext::from_int(c)])
    }

    #[test]
    fn fermat_is_smooth_genus_one() {
        let c = curve("X^3 + Y^3 + Z^3");
        assert!(c.is_smooth());
        assert_eq!(c.genus(), Some(1));
    }

    #[test]
    fn nodal_cubic_classification() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        assert_eq!(c.singular_points().len(), 1);
        let s = &c.singular_points()[0];
        assert_eq!(s.point, pt(0, 0, 1));
        assert_eq!(s.multiplicity, 2);
        assert_eq!(s.class, SingClass::Node);
        assert_eq!(c.genus(), Some(0));
    }

    #[test]
    fn cuspidal_cubic_classification() {
        let c = curve("X^3 - Y*Z^2");
        assert_eq!(c.singular_points().len(), 1);
        let s = &c.singular_points()[0];
        assert_eq!(s.point, pt(0, 1, 0));
        assert_eq!(s.class, SingClass::Cusp);
        assert_eq!(c.genus(), Some(0));
    }

    #[test]
    fn multiplicities() {
        let c = curve("X^3 + Y^3 + Z^3");
        assert_eq!(c.multiplicity_at(&pt(1, 1, 1)), 0);
        assert_eq!(c.multiplicity_at(&pt(0, 1, -1)), 1);
        let n = curve("X^2*Z + Y^2*(Y + Z)");
        assert_eq!(n.multiplicity_at(&pt(0, 0, 1)), 2);
    }

    #[test]
    fn fermat_flexes() {
        let c = curve("X^3 + Y^3 + Z^3");
        let fl = c.flexes();
        assert_eq!(fl.len(), 9);
        assert!(fl.iter().any(|p| *p == pt(0, 1, -1)));
        // every flex meets its tangent to order >= 3
        for p in fl {
            let t = c.tangent_line(p).unwrap();
            let i = c.intersection_multiplicity(&t, p).unwrap();
            assert!(i >= 3, "flex {p} has contact order {i}");
        }
    }

    #[test]
    fn nodal_cubic_has_three_flexes() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        assert_eq!(c.flexes().len(), 3);
        assert!(c.flexes().iter().any(|p| *p == pt(1, 0, 0)));
    }

    #[test]
    fn cuspidal_cubic_has_one_flex() {
        let c = curve("X^3 - Y*Z^2");
        assert_eq!(c.flexes().len(), 1);
        assert_eq!(c.flexes()[0], pt(0, 0, 1));
    }

    #[test]
    fn tangent_at_fermat_flex() {
        let c = curve("X^3 + Y^3 + Z^3");
        let t = c.tangent_line(&pt(0, 1, -1)).unwrap();
        assert_eq!(t, pt(0, 1, 1));
        assert_eq!(c.intersection_multiplicity(&t, &pt(0, 1, -1)).unwrap(), 3);
    }

    #[test]
    fn node_line_multiplicity() {
        // line Y = 0 meets the node (0:0:1) with multiplicity 2
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        let line = pt(0, 1, 0); // Y = 0
        assert_eq!(c.intersection_multiplicity(&line, &pt(0, 0, 1)).unwrap(), 2);
    }

    #[test]
    fn line_profile_sums_to_degree() {
        let c = curve("X^3 + Y^3 + Z^3");
        // flex tangent: 3 at the flex; generic line: 1+1+1
        let lp = c.line_profile(&[Ext::zero(), Ext::one(), Ext::one()]).unwrap();
        let total: usize = lp.intersections.iter().map(|&(_, _, m)| m).sum();
        assert_eq!(total, 3);
        assert!(lp.intersections.iter().any(|&(_, _, m)| m == 3));
    }

    #[test]
    fn reducible_rejected() {
        // (X + Y + Z) * quadric
        let f = parse_hompoly("(X + Y + Z)*(X^2 + Y^2 + Z^2)").unwrap();
        let e = PlaneCurve::new(f).unwrap_err();
        assert!(matches!(e, Error::Reducible { .. }), "{e}");
        // repeated factor
        let g = parse_hompoly("(X + Y + Z)^3").unwrap();
        assert!(PlaneCurve::new(g).is_err());
        // coordinate line
        let h = parse_hompoly("X*Y*Z").unwrap();
        assert!(matches!(
            PlaneCurve::new(h).unwrap_err(),
            Error::Reducible { .. }
        ));
    }

    #[test]
    fn cone_rejected() {
        let f = parse_hompoly("X^3 + Y^3").unwrap();
        assert!(PlaneCurve::new(f).is_err());
    }
}
