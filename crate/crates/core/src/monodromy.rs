//! Numerical monodromy of projections: branch points from the exact
//! discriminant, loop tracking by predictor–corrector continuation, and the
//! resulting permutation group.
//!
//! The exact/numeric boundary sits exactly here: branch points are roots of
//! exact polynomials, loops are tracked in floating point (53-bit first,
//! escalating per loop through the precision ladder), and the result is
//! discrete again — permutations validated by a product identity and a
//! second, independently-based run.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bigfloat::{MpComplex, Scalar};
use crate::curve::{PlaneCurve, ProjectivePoint};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::poly::hom::HomPoly;
use crate::galois::{frame_to_first_vertex, rotation_to_z, x_coefficient_forms, IntermediateMap};
use crate::linalg::Mat3;
use crate::permgroup::{PermGroup, Permutation};
use crate::poly::bi::{discriminant_x, BiPoly};
use crate::poly::roots::{aberth, complex_roots, PRECISION_LADDER};

/// The affine fiber polynomial of a projection, framed so the leading
/// `x`-coefficient is a nonzero constant.
#[derive(Clone, Debug)]
pub struct FiberSystem {
    /// `f(x, t)` with exact coefficients; roots in `x` over `t` are the
    /// fiber of the projection over the pencil parameter `t`.
    pub poly: BiPoly,
    /// Sheet count `N = d - multiplicity(center)`.
    pub sheets: usize,
    /// The frame used: `F_framed(p) = F(frame * p)` with the center at
    /// `(1:0:0)` (and, for a center on the curve, the tangent at `t = inf`).
    pub frame: Mat3,
    pub center_multiplicity: usize,
}

/// Options shared by all monodromy runs.
#[derive(Clone, Copy, Debug)]
pub struct MonodromyOptions {
    pub seed: u64,
    /// First rung of the precision ladder to try (53, 212, or 848).
    pub min_prec: u32,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            seed: 0,
            min_prec: PRECISION_LADDER[0],
        }
    }
}

/// Everything a monodromy run commits to: branch data, loop permutations,
/// and the validation outcomes.
#[derive(Clone, Debug)]
pub struct MonodromyCertificate {
    pub sheets: usize,
    /// Finite branch points in the loop (angular) order used.
    pub branch_points: Vec<Complex64>,
    pub base_point: Complex64,
    pub base_fiber: Vec<Complex64>,
    /// One permutation per finite branch point, same order as
    /// `branch_points`.
    pub loop_permutations: Vec<Permutation>,
    /// Monodromy around `t = infinity` (inverse of the big-circle loop).
    pub infinity_permutation: Permutation,
    /// Composed finite loops equal the big-circle permutation.
    pub product_check: bool,
    /// A second base point reproduced the group order and the per-branch
    /// cycle types.
    pub revalidated: bool,
    /// Highest precision (bits) any loop needed.
    pub precision: u32,
    pub seed: u64,
    pub group_order: usize,
    pub transitive: bool,
    /// Exact Riemann–Hurwitz balance `2g - 2 = -2N + sum (e - 1)`, when the
    /// genus of the source curve is known.
    pub riemann_hurwitz_ok: Option<bool>,
}

/// Exact affine restriction of the projection of `curve` from `center`.
pub fn fiber_system(curve: &PlaneCurve, center: &ProjectivePoint) -> Result<FiberSystem> {
    let pe = center
        .exact()
        .ok_or_else(|| Error::Unsupported("fiber system needs exact center coordinates".into()))?
        .clone();
    fiber_system_from_poly(curve.poly(), &pe)
}

/// Same as [`fiber_system`] but for a bare defining polynomial — used for
/// dual curves, whose singularities need not pass full curve analysis.
pub fn fiber_system_from_poly(poly: &HomPoly, center: &[Ext; 3]) -> Result<FiberSystem> {
    let d = poly.degree() as usize;
    let mut frame = frame_to_first_vertex(center);
    let mut f = poly.transform(&frame);
    let forms = x_coefficient_forms(&f, d);
    // F = sum X^(d-j) A_j(Y, Z): the multiplicity at (1:0:0) is the least j
    // with A_j nonzero
    let m = forms
        .iter()
        .position(|a| !a.is_zero())
        .ok_or_else(|| Error::Degenerate("zero polynomial has no projection".into()))?;
    if m >= 2 {
        return Err(Error::SingularCenter(format!(
            "projection center has multiplicity {m}"
        )));
    }
    if m == 1 {
        // rotate (Y, Z) so the tangent line at the center becomes {Z = 0},
        // i.e. the fiber at t = infinity; the x^(d-1) coefficient is then
        // the constant 1
        let rot = rotation_to_z(&forms[1].coeff(0), &forms[1].coeff(1));
        f = f.transform(&rot);
        frame = frame.mul(&rot);
    }
    let bp = BiPoly::new(f.dehomogenize(2));
    let n = bp.deg_x().unwrap_or(0);
    if n != d - m {
        return Err(Error::Degenerate(format!(
            "fiber degree {n} differs from expected {}",
            d - m
        )));
    }
    debug_assert!(
        bp.lc_x().deg() == Some(0),
        "frame must leave a constant leading x-coefficient"
    );
    Ok(FiberSystem {
        poly: bp,
        sheets: n,
        frame,
        center_multiplicity: m,
    })
}

/// Distinct finite branch points: roots of the exact `x`-discriminant plus
/// roots of the leading `x`-coefficient (where a sheet escapes to infinity).
pub fn branch_points(fs: &FiberSystem, min_prec: u32) -> Result<Vec<Complex64>> {
    bipoly_branch_points(&fs.poly, min_prec)
}

fn bipoly_branch_points(f: &BiPoly, min_prec: u32) -> Result<Vec<Complex64>> {
    let disc = discriminant_x(f)?;
    if disc.is_zero() {
        return Err(Error::Degenerate(
            "identically vanishing discriminant (non-reduced fiber polynomial)".into(),
        ));
    }
    let mut pts: Vec<Complex64> = Vec::new();
    if disc.deg().map_or(false, |d| d > 0) {
        pts.extend(complex_roots(&disc, min_prec)?.into_iter().map(|(z, _)| z));
    }
    let lc = f.lc_x();
    if lc.deg().map_or(false, |d| d > 0) {
        for (z, _) in complex_roots(&lc, min_prec)? {
            if pts.iter().all(|p| (p - z).norm() > 1e-9 * (1.0 + z.norm())) {
                pts.push(z);
            }
        }
    }
    Ok(pts)
}

/// Monodromy of the projection of `curve` from `center`.
pub fn monodromy_group(
    curve: &PlaneCurve,
    center: &ProjectivePoint,
    opts: &MonodromyOptions,
) -> Result<(MonodromyCertificate, PermGroup)> {
    let fs = fiber_system(curve, center)?;
    bipoly_monodromy(&fs.poly, curve.genus(), opts)
}

/// Monodromy of the projection of `{poly = 0}` from an exact center; the
/// genus (of the normalization) is supplied by the caller when known.
pub fn projection_monodromy(
    poly: &HomPoly,
    center: &[Ext; 3],
    genus: Option<usize>,
    opts: &MonodromyOptions,
) -> Result<(MonodromyCertificate, PermGroup)> {
    let fs = fiber_system_from_poly(poly, center)?;
    bipoly_monodromy(&fs.poly, genus, opts)
}

/// Monodromy of the intermediate map `f_P` as a degree-`r` cover of the
/// line; its group order is the degree of the Galois closure of `f_P`.
pub fn rational_map_monodromy(
    map: &IntermediateMap,
    opts: &MonodromyOptions,
) -> Result<(MonodromyCertificate, PermGroup)> {
    if map.r == 1 {
        // a degree-1 map is its own (trivial) Galois closure; there is
        // nothing to track
        return Err(Error::Degenerate(
            "monodromy of a degree-1 map is trivial".into(),
        ));
    }
    // fiber equation num(y) - t * den(y) = 0 over the target parameter t
    let num = map.num.dehomogenize();
    let den = map.den.dehomogenize();
    let r = map.r;
    let cx: Vec<crate::poly::UniPoly> = (0..=r)
        .map(|i| {
            crate::poly::UniPoly::new(vec![num.coeff(i), -den.coeff(i)])
        })
        .collect();
    let f = BiPoly::new(cx);
    if f.deg_x() != Some(r) {
        return Err(Error::Degenerate(
            "intermediate map degenerates as a cover of the line".into(),
        ));
    }
    // the source of f_P is the projective line: genus 0
    bipoly_monodromy(&f, Some(0), opts)
}

/// Full monodromy pipeline for an explicit fiber polynomial.
pub fn bipoly_monodromy(
    f: &BiPoly,
    genus: Option<usize>,
    opts: &MonodromyOptions,
) -> Result<(MonodromyCertificate, PermGroup)> {
    let n = f
        .deg_x()
        .ok_or_else(|| Error::Degenerate("zero fiber polynomial".into()))?;
    if n == 0 {
        return Err(Error::Degenerate("fiber polynomial constant in x".into()));
    }
    let branch = bipoly_branch_points(f, opts.min_prec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let run1 = run_from_base(f, n, &branch, &mut rng, opts)?;
    let run2 = run_from_base(f, n, &branch, &mut rng, opts)?;
    let revalidated = run1.group_order == run2.group_order
        && run1.cycle_types_by_branch() == run2.cycle_types_by_branch();
    if !revalidated {
        return Err(Error::Validation(format!(
            "monodromy runs disagree: orders {} vs {}",
            run1.group_order, run2.group_order
        )));
    }

    let group = run1.group;
    let transitive = group.is_transitive();
    let rh = genus.map(|g| {
        let mut total: isize = 0;
        for p in run1
            .loop_permutations
            .iter()
            .chain(std::iter::once(&run1.infinity_permutation))
        {
            total += p
                .cycle_type()
                .iter()
                .map(|&l| l as isize - 1)
                .sum::<isize>();
        }
        2 * g as isize - 2 == -2 * (n as isize) + total
    });
    let cert = MonodromyCertificate {
        sheets: n,
        branch_points: run1.branch_order,
        base_point: run1.base_point,
        base_fiber: run1.base_fiber,
        loop_permutations: run1.loop_permutations,
        infinity_permutation: run1.infinity_permutation,
        product_check: run1.product_check,
        revalidated,
        precision: run1.precision,
        seed: opts.seed,
        group_order: group.order(),
        transitive,
        riemann_hurwitz_ok: rh,
    };
    Ok((cert, group))
}

/// One complete tracked run from a fresh base point.
struct MonodromyRun {
    branch_order: Vec<Complex64>,
    base_point: Complex64,
    base_fiber: Vec<Complex64>,
    loop_permutations: Vec<Permutation>,
    infinity_permutation: Permutation,
    product_check: bool,
    precision: u32,
    group_order: usize,
    group: PermGroup,
}

impl MonodromyRun {
    /// Cycle types keyed by branch point, in a base-independent order
    /// (loop order differs between runs from different base points).
    fn cycle_types_by_branch(&self) -> Vec<(i64, i64, Vec<usize>)> {
        let mut v: Vec<(i64, i64, Vec<usize>)> = self
            .branch_order
            .iter()
            .zip(&self.loop_permutations)
            .map(|(b, p)| {
                (
                    (b.re * 1e6).round() as i64,
                    (b.im * 1e6).round() as i64,
                    p.cycle_type(),
                )
            })
            .collect();
        v.sort();
        v
    }
}

fn run_from_base(
    f: &BiPoly,
    n: usize,
    branch: &[Complex64],
    rng: &mut ChaCha8Rng,
    opts: &MonodromyOptions,
) -> Result<MonodromyRun> {
    let rmax = branch
        .iter()
        .map(|b| b.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let radius = 2.0 * rmax;

    // base point: random angle, redrawn until the fiber is well separated
    let mut base = Complex64::new(0.0, 0.0);
    let mut base_fiber: Vec<Complex64> = Vec::new();
    let mut found = false;
    for _ in 0..32 {
        let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let cand = Complex64::from_polar(radius, theta);
        let fiber = fiber_at_c64(f, cand)?;
        let scale = fiber.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        if min_pairwise(&fiber) > 1e-6 * scale {
            base = cand;
            base_fiber = fiber;
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::Numerical(
            "no well-separated base fiber found".into(),
        ));
    }

    // angular loop order as seen from the base point; the cluster sits in a
    // narrow cone, so measure angles relative to the cluster direction
    let inward = -base / base.norm();
    let mut order: Vec<usize> = (0..branch.len()).collect();
    let angle = |b: &Complex64| ((b - base) / inward).arg();
    order.sort_by(|&i, &j| {
        angle(&branch[i])
            .partial_cmp(&angle(&branch[j]))
            .unwrap()
            .then(i.cmp(&j))
    });
    let branch_order: Vec<Complex64> = order.iter().map(|&i| branch[i]).collect();

    let mut precision = opts.min_prec;
    let mut loops: Vec<Permutation> = Vec::new();
    for b in branch_order.iter() {
        let radius_k = loop_radius(*b, &branch_order, base);
        let path = loop_path(base, *b, radius_k, &branch_order);
        let (perm, used) =
            track_path_escalating(f, &base_fiber, &path, opts.min_prec, &branch_order)?;
        precision = precision.max(used);
        loops.push(perm);
    }

    // big circle (counterclockwise) for the product identity and infinity
    let circle: Vec<Complex64> = (0..=64)
        .map(|k| base * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 64.0))
        .collect();
    let (big, used) = track_path_escalating(f, &base_fiber, &circle, opts.min_prec, &branch_order)?;
    precision = precision.max(used);

    let mut product = Permutation::identity(n);
    for p in &loops {
        // later loops act after earlier ones
        product = p.compose(&product);
    }
    let product_check = product == big;
    if !product_check {
        return Err(Error::Validation(
            "loop product does not match the big-circle permutation".into(),
        ));
    }
    let infinity = big.inverse();

    let mut gens = loops.clone();
    gens.push(infinity.clone());
    let group = PermGroup::new(n, gens)?;
    Ok(MonodromyRun {
        branch_order,
        base_point: base,
        base_fiber,
        loop_permutations: loops,
        infinity_permutation: infinity,
        product_check,
        precision,
        group_order: group.order(),
        group,
    })
}

/// Radius for the loop circle around `b`: half the distance to the nearest
/// other branch point, capped well inside the segment back to base.
fn loop_radius(b: Complex64, branch: &[Complex64], base: Complex64) -> f64 {
    let nearest = branch
        .iter()
        .map(|o| (o - b).norm())
        .filter(|&d| d > 1e-12)
        .fold(f64::INFINITY, f64::min);
    let to_base = (base - b).norm();
    let r = if nearest.is_finite() {
        0.5 * nearest
    } else {
        0.25 * to_base
    };
    r.min(0.25 * to_base)
}

/// Piecewise-linear loop: straight entry segment -> counterclockwise circle
/// -> segment back. Straight tails from a common base are pairwise
/// non-crossing, which is what makes the angular-order product identity
/// valid; `detour_tail` reroutes close passes without changing the class.
fn loop_path(base: Complex64, b: Complex64, r: f64, branch: &[Complex64]) -> Vec<Complex64> {
    let dir = (base - b) / (base - b).norm();
    let entry = b + dir * r;
    let tail = detour_tail(vec![base, entry], branch, b);
    let mut path = tail.clone();
    let entry_angle = (entry - b).arg();
    for k in 1..=32 {
        let phi = entry_angle + std::f64::consts::TAU * k as f64 / 32.0;
        path.push(b + Complex64::from_polar(r, phi));
    }
    path.extend(tail.iter().rev().skip(1));
    path
}

/// Reroute a tail polyline around the exclusion disks of the other branch
/// points. Each offending segment is replaced by a three-point detour on the
/// side of the segment the branch point is not on, which keeps the homotopy
/// class; the detour stays at `0.8 r_o` from the avoided point `o`, outside
/// the `0.6 r_q` trigger of every other point, so one pass suffices.
fn detour_tail(points: Vec<Complex64>, branch: &[Complex64], looped: Complex64) -> Vec<Complex64> {
    let mut out = vec![points[0]];
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let seg = b - a;
        let len2 = seg.norm_sqr();
        // offenders ordered by their foot-point parameter along the segment
        let mut hits: Vec<(f64, Complex64, f64)> = branch
            .iter()
            .filter(|o| (*o - looped).norm() > 1e-12)
            .filter_map(|&o| {
                let s = (((o - a) * seg.conj()).re / len2).clamp(0.0, 1.0);
                if s <= 0.0 || s >= 1.0 {
                    return None; // endpoints are already kept clear
                }
                let foot = a + seg * s;
                let r_o = loop_clearance(o, branch);
                if (foot - o).norm() < 0.6 * r_o {
                    Some((s, o, r_o))
                } else {
                    None
                }
            })
            .collect();
        hits.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for (s, o, r_o) in hits {
            let foot = a + seg * s;
            let radius = 0.8 * r_o;
            let away = {
                let d = foot - o;
                if d.norm() > 1e-12 * radius {
                    d / d.norm()
                } else {
                    // degenerate near-collinear pass: pick a deterministic side
                    Complex64::new(0.0, 1.0) * seg / seg.norm()
                }
            };
            // enter and leave the disk along the segment, apex on the far side
            let along = (radius * radius - (foot - o).norm_sqr()).max(0.0).sqrt();
            let step = seg / seg.norm() * along;
            out.push(foot - step);
            out.push(o + away * radius);
            out.push(foot + step);
        }
        out.push(b);
    }
    out
}

/// Exclusion radius around a branch point: half the distance to its nearest
/// neighbour (the same scale its own loop circle uses).
fn loop_clearance(o: Complex64, branch: &[Complex64]) -> f64 {
    let nearest = branch
        .iter()
        .map(|q| (q - o).norm())
        .filter(|&d| d > 1e-12)
        .fold(f64::INFINITY, f64::min);
    if nearest.is_finite() {
        0.5 * nearest
    } else {
        0.0
    }
}

/// Track a path at increasing precision until it succeeds.
fn track_path_escalating(
    f: &BiPoly,
    base_fiber: &[Complex64],
    path: &[Complex64],
    min_prec: u32,
    branch: &[Complex64],
) -> Result<(Permutation, u32)> {
    let mut last = Error::Numerical("precision ladder exhausted".into());
    for &prec in PRECISION_LADDER.iter().filter(|&&p| p >= min_prec) {
        let attempt = if prec <= 53 {
            track_path_generic::<Complex64>(f, base_fiber, path, prec, branch)
        } else {
            track_path_generic::<MpComplex>(f, base_fiber, path, prec, branch)
        };
        match attempt {
            Ok(p) => return Ok((p, prec)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Track all sheets along a piecewise-linear path starting and ending at the
/// base point; returns the sheet permutation.
fn track_path_generic<S: Scalar>(
    f: &BiPoly,
    base_fiber: &[Complex64],
    path: &[Complex64],
    prec: u32,
    branch: &[Complex64],
) -> Result<Permutation> {
    let tc: Vec<Vec<S>> = f
        .coeffs_x()
        .iter()
        .map(|c| c.to_scalars::<S>(prec))
        .collect();
    // refine the base fiber at this precision, keeping the canonical order
    let mut roots: Vec<S> = base_fiber
        .iter()
        .map(|&z| S::from_c64(z, prec))
        .collect();
    let t0 = S::from_c64(path[0], prec);
    let c0 = coeffs_at(&tc, &t0, prec);
    for r in roots.iter_mut() {
        *r = newton_converge(&c0, r, prec)
            .ok_or_else(|| Error::Numerical("base fiber refinement failed".into()))?;
    }

    for w in path.windows(2) {
        track_segment(&tc, &mut roots, w[0], w[1], prec, branch)?;
    }

    // nearest-neighbor sheet matching against the base fiber
    let minsep = min_pairwise(base_fiber);
    let mut images = vec![usize::MAX; roots.len()];
    for (i, r) in roots.iter().enumerate() {
        let z = r.to_c64();
        let (j, dist) = base_fiber
            .iter()
            .enumerate()
            .map(|(j, &b)| (j, (z - b).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if dist > minsep / 3.0 {
            return Err(Error::Numerical(format!(
                "sheet {i} landed {dist:.3e} away from every base sheet (separation {minsep:.3e})"
            )));
        }
        images[i] = j;
    }
    Permutation::from_images(images)
        .map_err(|_| Error::Numerical("sheet matching is not a bijection".into()))
}

/// Adaptive continuation of all roots from `t0` to `t1` (straight segment).
fn track_segment<S: Scalar>(
    tc: &[Vec<S>],
    roots: &mut Vec<S>,
    t0: Complex64,
    t1: Complex64,
    prec: u32,
    branch: &[Complex64],
) -> Result<()> {
    let mut cur = t0;
    let mut targets = vec![t1];
    let mut steps = 0usize;
    while let Some(&target) = targets.last() {
        steps += 1;
        if steps > 20_000 {
            return Err(Error::Numerical("path subdivision did not converge".into()));
        }
        // Cap the chord by the distance to the nearest branch point: sheet
        // rotation rate scales like |dt| / dist, and a chord that rotates a
        // near-symmetric fiber onto itself would slip past the movement guard.
        let mid = (cur + target) / 2.0;
        let near = branch
            .iter()
            .map(|b| (b - mid).norm())
            .fold(f64::INFINITY, f64::min);
        if near.is_finite() && (target - cur).norm() > 0.25 * near {
            if (target - cur).norm() < 1e-13 * (1.0 + cur.norm()) {
                return Err(Error::Numerical(format!(
                    "path passes through a branch point near t = {cur}"
                )));
            }
            targets.push(mid);
            continue;
        }
        let ts = S::from_c64(target, prec);
        let c = coeffs_at(tc, &ts, prec);
        let before: Vec<Complex64> = roots.iter().map(|r| r.to_c64()).collect();
        let minsep_before = min_pairwise(&before).max(1e-300);
        let mut ok = true;
        let mut new_roots = Vec::with_capacity(roots.len());
        for r in roots.iter() {
            match newton_converge(&c, r, prec) {
                Some(nr) => {
                    let moved = (nr.to_c64() - r.to_c64()).norm();
                    if moved > minsep_before / 3.0 {
                        ok = false;
                        break;
                    }
                    new_roots.push(nr);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let after: Vec<Complex64> = new_roots.iter().map(|r| r.to_c64()).collect();
            let scale = after.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
            if min_pairwise(&after) < 1e-9 * scale {
                ok = false;
            }
        }
        if ok {
            *roots = new_roots;
            cur = target;
            targets.pop();
        } else {
            if (target - cur).norm() < 1e-13 * (1.0 + cur.norm()) {
                return Err(Error::Numerical(format!(
                    "sheets collided near t = {cur} during tracking"
                )));
            }
            targets.push((cur + target) / 2.0);
        }
    }
    Ok(())
}

/// Coefficients in `x` at a fixed parameter value, by Horner in `t`.
fn coeffs_at<S: Scalar>(tc: &[Vec<S>], t: &S, prec: u32) -> Vec<S> {
    tc.iter().map(|c| horner(c, t, prec)).collect()
}

fn horner<S: Scalar>(c: &[S], x: &S, prec: u32) -> S {
    let mut acc = S::from_c64(Complex64::new(0.0, 0.0), prec);
    for ci in c.iter().rev() {
        acc = acc.mul(x).add(ci);
    }
    acc
}

fn eval_and_deriv<S: Scalar>(c: &[S], x: &S, prec: u32) -> (S, S) {
    let zero = || S::from_c64(Complex64::new(0.0, 0.0), prec);
    let mut p = zero();
    let mut dp = zero();
    for ci in c.iter().rev() {
        dp = dp.mul(x).add(&p);
        p = p.mul(x).add(ci);
    }
    (p, dp)
}

/// Newton iteration to full working precision; `None` on divergence.
fn newton_converge<S: Scalar>(c: &[S], x0: &S, prec: u32) -> Option<S> {
    let tol = 2f64.powi(-(prec as i32 - 10));
    let mut x = x0.clone();
    let mut last_step = f64::INFINITY;
    for _ in 0..60 {
        let (p, dp) = eval_and_deriv(c, &x, prec);
        if dp.is_zero() {
            return None;
        }
        let step = p.div(&dp);
        let s = step.abs();
        let xa = x.abs().max(1.0);
        x = x.sub(&step);
        if s <= tol * xa {
            return Some(x);
        }
        if s > 4.0 * last_step && s > 1e-6 * xa {
            return None; // diverging
        }
        last_step = s;
    }
    None
}

fn fiber_at_c64(f: &BiPoly, t: Complex64) -> Result<Vec<Complex64>> {
    let tc: Vec<Vec<Complex64>> = f
        .coeffs_x()
        .iter()
        .map(|c| c.to_scalars::<Complex64>(53))
        .collect();
    let coeffs = coeffs_at(&tc, &t, 53);
    let lead = coeffs.last().unwrap();
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if lead.norm() < 1e-12 * scale {
        return Err(Error::Numerical(format!(
            "leading coefficient nearly vanishes at t = {t}"
        )));
    }
    aberth::<Complex64>(&coeffs, 53)
}

fn min_pairwise(v: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..v.len() {
        for j in 0..i {
            m = m.min((v[i] - v[j]).norm());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::GroupClass;
    use crate::poly::parse::{parse_hompoly, parse_point};
    use crate::poly::UniPoly;

    fn curve(src: &str) -> PlaneCurve {
        PlaneCurve::new(parse_hompoly(src).unwrap()).unwrap()
    }

    fn pt(src: &str) -> ProjectivePoint {
        ProjectivePoint::from_exact(parse_point(src).unwrap())
    }

    fn up(ints: &[i64]) -> UniPoly {
        UniPoly::from_ints(ints)
    }

    /// Loop construction regression: a near-collinear branch configuration
    /// (base, branch 0, and branch 1 almost on a line) must keep every tail
    /// on the same side of the intervening branch point as the straight
    /// reference tail, or the angular-order product identity breaks.
    #[test]
    fn near_collinear_tails_keep_the_product_identity() {
        use crate::curve::PlaneCurve;
        use crate::galois::{intermediate_map, standard_form};
        use crate::poly::parse::parse_hompoly;
        let c =
            PlaneCurve::new(parse_hompoly("X^3 + Y^3 + Z^3 + 2*X*Y*Z").unwrap()).unwrap();
        let flexes = c.flexes().to_vec();
        let p = &flexes[1];
        let cert = standard_form(&c, p).unwrap().unwrap();
        let map = intermediate_map(&cert).unwrap();
        let num = map.num.dehomogenize();
        let den = map.den.dehomogenize();
        let cx: Vec<crate::poly::UniPoly> = (0..=map.r)
            .map(|i| crate::poly::UniPoly::new(vec![num.coeff(i), -den.coeff(i)]))
            .collect();
        let f = BiPoly::new(cx);
        let branch = bipoly_branch_points(&f, 53).unwrap();
        let base = Complex64::new(4.285371895865527, -7.914264824614241);
        let base_fiber = fiber_at_c64(&f, base).unwrap();
        let inward = -base / base.norm();
        let mut order: Vec<usize> = (0..branch.len()).collect();
        let angle = |b: &Complex64| ((b - base) / inward).arg();
        order.sort_by(|&i, &j| angle(&branch[i]).partial_cmp(&angle(&branch[j])).unwrap());
        let branch_order: Vec<Complex64> = order.iter().map(|&i| branch[i]).collect();
        let mut product = Permutation::identity(3);
        for &b in &branch_order {
            let r = loop_radius(b, &branch_order, base);
            let dir = (base - b) / (base - b).norm();
            let entry = b + dir * r;
            let mut path = vec![base, entry];
            let entry_angle = (entry - b).arg();
            for k in 1..=64 {
                let phi = entry_angle + std::f64::consts::TAU * k as f64 / 64.0;
                path.push(b + Complex64::from_polar(r, phi));
            }
            path.push(base);
            let (perm, _) =
                track_path_escalating(&f, &base_fiber, &path, 212, &branch_order).unwrap();
            eprintln!("straight loop around {b}: {perm}");
            product = perm.compose(&product);
        }
        let circle: Vec<Complex64> = (0..=256)
            .map(|k| base * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 256.0))
            .collect();
        let (big, _) =
            track_path_escalating(&f, &base_fiber, &circle, 212, &branch_order).unwrap();
        eprintln!("product {product} big {big}");

        // the tail to branch_order[1] passes within 0.04 of branch_order[0];
        // the constructed loop must agree with the straight reference at both
        // precisions
        let b2 = branch_order[1];
        let r2 = loop_radius(b2, &branch_order, base);
        let path = loop_path(base, b2, r2, &branch_order);
        let (p53, _) = track_path_escalating(&f, &base_fiber, &path, 53, &branch_order).unwrap();
        let (p212, _) = track_path_escalating(&f, &base_fiber, &path, 212, &branch_order).unwrap();
        assert_eq!(p53.to_string(), "(1 3)");
        assert_eq!(p53, p212);
        assert_eq!(product, big);
    }

    #[test]
    fn nullhomotopic_tail_is_identity() {
        // out-and-back path through the sheet-clustering region near t = 0
        // of x^3 + t^3 + t^4; any non-identity result is a tracking error
        let f = BiPoly::new(vec![up(&[0, 0, 0, 1, 1]), up(&[0]), up(&[0]), up(&[1])]);
        let base = Complex64::new(1.8587600860888238, 0.7382485640778913);
        let entry = Complex64::new(-0.515, 0.125);
        let base_fiber = fiber_at_c64(&f, base).unwrap();
        let branch = [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)];
        let path = vec![base, entry, base];
        let (perm, _) = track_path_escalating(&f, &base_fiber, &path, 53, &branch).unwrap();
        assert!(perm.is_identity(), "tail tracked to {perm}");
    }

    #[test]
    fn square_root_cover() {
        // x^2 - t: branch point 0, transposition; infinity also branched
        let f = BiPoly::new(vec![up(&[0, -1]), up(&[0]), up(&[1])]);
        let (cert, group) = bipoly_monodromy(&f, Some(0), &MonodromyOptions::default()).unwrap();
        assert_eq!(cert.sheets, 2);
        assert_eq!(cert.branch_points.len(), 1);
        assert_eq!(cert.loop_permutations[0].cycle_type(), vec![2]);
        assert_eq!(cert.infinity_permutation.cycle_type(), vec![2]);
        assert!(cert.product_check);
        assert_eq!(cert.riemann_hurwitz_ok, Some(true));
        assert_eq!(group.order(), 2);
        assert!(group.is_regular().unwrap());
    }

    #[test]
    fn trinomial_cubic_cover_is_s3() {
        // x^3 - 3x - t: simple branch points at t = +-2, 3-cycle at infinity
        let f = BiPoly::new(vec![up(&[0, -1]), up(&[-3]), up(&[0]), up(&[1])]);
        let (cert, group) = bipoly_monodromy(&f, Some(0), &MonodromyOptions::default()).unwrap();
        assert_eq!(cert.sheets, 3);
        assert_eq!(cert.branch_points.len(), 2);
        for p in &cert.loop_permutations {
            assert_eq!(p.cycle_type(), vec![2, 1]);
        }
        assert_eq!(cert.infinity_permutation.cycle_type(), vec![3]);
        assert!(cert.product_check);
        assert_eq!(cert.riemann_hurwitz_ok, Some(true));
        assert_eq!(group.order(), 6);
        assert_eq!(group.classify(), GroupClass::Symmetric(3));
    }

    #[test]
    fn fermat_fiber_system() {
        let c = curve("X^3 + Y^3 + Z^3");
        let fs = fiber_system(&c, &pt("1:0:0")).unwrap();
        assert_eq!(fs.sheets, 3);
        // f = x^3 + t^3 + 1
        assert_eq!(fs.poly.deg_x(), Some(3));
        assert_eq!(fs.poly.deg_y(), Some(3));
        let b = branch_points(&fs, 53).unwrap();
        assert_eq!(b.len(), 3); // cube roots of -1
        for z in &b {
            assert!((z.powu(3) + 1.0).norm() < 1e-8);
        }
    }

    #[test]
    fn fermat_galois_projection_is_cyclic() {
        let c = curve("X^3 + Y^3 + Z^3");
        let (cert, group) =
            monodromy_group(&c, &pt("1:0:0"), &MonodromyOptions::default()).unwrap();
        assert_eq!(cert.sheets, 3);
        assert_eq!(group.order(), 3);
        assert_eq!(group.classify(), GroupClass::Cyclic(3));
        assert!(group.is_regular().unwrap());
        assert_eq!(cert.riemann_hurwitz_ok, Some(true));
    }

    #[test]
    fn fermat_generic_projection_is_s3() {
        let c = curve("X^3 + Y^3 + Z^3");
        let (cert, group) =
            monodromy_group(&c, &pt("1:1:1"), &MonodromyOptions::default()).unwrap();
        assert_eq!(cert.sheets, 3);
        assert_eq!(group.order(), 6);
        assert_eq!(group.classify(), GroupClass::Symmetric(3));
        assert!(!group.is_regular().unwrap());
        assert_eq!(cert.riemann_hurwitz_ok, Some(true));
    }

    #[test]
    fn inner_projection_drops_degree() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        let fs = fiber_system(&c, &pt("1:0:0")).unwrap();
        assert_eq!(fs.sheets, 2);
        let (cert, group) =
            monodromy_group(&c, &pt("1:0:0"), &MonodromyOptions::default()).unwrap();
        assert_eq!(cert.sheets, 2);
        assert_eq!(group.order(), 2);
        assert_eq!(cert.riemann_hurwitz_ok, Some(true));
    }

    #[test]
    fn singular_center_rejected() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        assert!(matches!(
            fiber_system(&c, &pt("0:0:1")),
            Err(Error::SingularCenter(_))
        ));
    }

    #[test]
    fn determinism_same_seed() {
        let c = curve("X^3 + Y^3 + Z^3");
        let opts = MonodromyOptions { seed: 7, min_prec: 53 };
        let (a, _) = monodromy_group(&c, &pt("1:1:1"), &opts).unwrap();
        let (b, _) = monodromy_group(&c, &pt("1:1:1"), &opts).unwrap();
        assert_eq!(a.base_point, b.base_point);
        assert_eq!(a.loop_permutations, b.loop_permutations);
        assert_eq!(a.base_fiber, b.base_fiber);
    }

    #[test]
    fn rational_map_closure_degree_two() {
        // f_P of the Fermat cubic: (Y^2 : Z^2), r = 2, closure degree 2
        let c = curve("X^3 + Y^3 + Z^3");
        let cert = crate::galois::standard_form(&c, &pt("1:0:0"))
            .unwrap()
            .unwrap();
        let map = crate::galois::intermediate_map(&cert).unwrap();
        let (mcert, group) =
            rational_map_monodromy(&map, &MonodromyOptions::default()).unwrap();
        assert_eq!(mcert.sheets, 2);
        assert_eq!(group.order(), 2);
        assert_eq!(mcert.riemann_hurwitz_ok, Some(true));
    }
}
