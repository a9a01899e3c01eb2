//! Extendable Galois points and their standard forms.
//!
//! A point `P` of multiplicity `m ∈ {0, 1}` with respect to a curve of
//! degree `d` is extendable Galois exactly when the curve can be brought by
//! an exact linear change of coordinates to
//!
//! ```text
//!     X^(d-m) * G_m(Y, Z) + G_d(Y, Z) = 0,      P = (1:0:0),
//! ```
//!
//! in which case the Galois group of the projection from `P` is cyclic of
//! order `d - m`, generated by `(X:Y:Z) -> (zeta*X:Y:Z)`. The reduction to
//! this shape is canonical for `m ∈ {0, 1}`: after moving `P` to `(1:0:0)`
//! (and, in the inner case, the tangent line to `{Z = 0}`), a single forced
//! Tschirnhaus shift in `X` either produces the standard form or proves that
//! none exists.

use crate::curve::dual::dual_curve;
use crate::curve::{PlaneCurve, ProjectivePoint, SingClass};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::linalg::Mat3;
use crate::monodromy::{
    projection_monodromy, rational_map_monodromy, MonodromyCertificate, MonodromyOptions,
};
use crate::permgroup::GroupClass;
use crate::poly::binary::{binary_factor_profile, BinaryForm};
use crate::poly::hom::HomPoly;

/// Which kind of Galois point a certificate describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GaloisKind {
    /// `P` off the curve (`m = 0`): standard form `X^d + G(Y, Z)`.
    Outer,
    /// `P` a smooth point of the curve (`m = 1`): `X^(d-1) Z + G(Y, Z)`.
    Inner,
}

impl GaloisKind {
    /// The order of the cyclic group `G_P`: `d - m`.
    pub fn base_degree(&self, d: usize) -> usize {
        match self {
            GaloisKind::Outer => d,
            GaloisKind::Inner => d - 1,
        }
    }
}

/// Witness that a point is extendable Galois: the exact change of
/// coordinates to the standard frame together with the standard-form data.
#[derive(Clone, Debug)]
pub struct StandardFormCertificate {
    /// `M` with `F_std(p) = F(M p)`; `M * (1,0,0)^T` recovers `P`.
    pub transform: Mat3,
    pub kind: GaloisKind,
    /// The original point, in the original frame.
    pub point: ProjectivePoint,
    /// Degree of the curve.
    pub degree: usize,
    /// `G_m`: the constant `1` (outer) or the linear form `Z` (inner).
    pub g_m: BinaryForm,
    /// `G_d`, the degree-`d` tail of the standard form.
    pub g_d: BinaryForm,
    /// The full standard-form polynomial `X^(d-m) G_m + G_d`.
    pub std_poly: HomPoly,
}

impl StandardFormCertificate {
    pub fn multiplicity(&self) -> usize {
        match self.kind {
            GaloisKind::Outer => 0,
            GaloisKind::Inner => 1,
        }
    }

    /// Order of the cyclic Galois group `G_P`.
    pub fn zeta_order(&self) -> usize {
        self.kind.base_degree(self.degree)
    }

    pub fn generator_description(&self) -> String {
        format!(
            "(X:Y:Z) -> (zeta*X : Y : Z), zeta a primitive {}-th root of unity",
            self.zeta_order()
        )
    }
}

/// The intermediate map `f_P` through which the projection from `P` factors
/// the projection from the conjugate point, reduced to lowest terms.
#[derive(Clone, Debug)]
pub struct IntermediateMap {
    pub num: BinaryForm,
    pub den: BinaryForm,
    /// Degree of `f_P` as a map of the projective line.
    pub r: usize,
    /// Number of distinct linear factors of `G_d`.
    pub n: usize,
}

/// Order bounds for the group of the conjugate point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrderBounds {
    pub lower: usize,
    pub upper: usize,
    /// Sharper upper bound `r * base^r`, valid when `f_P` itself is Galois
    /// (monodromy group regular).
    pub sharp_upper: Option<usize>,
}

/// Whether the conjugate point is predicted to be Galois for the dual curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DualGaloisPrediction {
    /// `r = 1`: the conjugate point is Galois with the given group order.
    Galois { predicted_order: usize },
    /// `r >= 2`: not Galois; the order is pinned down when `r = 2` (and, in
    /// the outer case, the projection ramifies at a smooth point).
    NotGalois { predicted_order: Option<usize> },
}

impl DualGaloisPrediction {
    pub fn is_galois(&self) -> bool {
        matches!(self, DualGaloisPrediction::Galois { .. })
    }

    pub fn predicted_order(&self) -> Option<usize> {
        match self {
            DualGaloisPrediction::Galois { predicted_order } => Some(*predicted_order),
            DualGaloisPrediction::NotGalois { predicted_order } => *predicted_order,
        }
    }
}

/// Predicted isomorphism type of the conjugate-point group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureTag {
    /// Dihedral of order 8 (nodal cubics, inner points).
    D8,
    /// `Z/p x D_2p` for an odd prime `p`, order `2 p^2`.
    ZpCrossD2p { p: usize },
}

impl StructureTag {
    pub fn order(&self) -> usize {
        match self {
            StructureTag::D8 => 8,
            StructureTag::ZpCrossD2p { p } => 2 * p * p,
        }
    }

    pub fn label(&self) -> String {
        match self {
            StructureTag::D8 => "D_8".into(),
            StructureTag::ZpCrossD2p { p } => format!("Z/{p} x D_{}", 2 * p),
        }
    }
}

/// Everything known about one extendable Galois point before any monodromy
/// is run: certificate, intermediate map, conjugate point, and the
/// theorem-level predictions. `r_closure` (degree of the Galois closure of
/// `f_P`) is filled immediately for `r <= 2`, where it is forced, and by the
/// monodromy of `f_P` otherwise.
#[derive(Clone, Debug)]
pub struct GaloisPointReport {
    pub cert: StandardFormCertificate,
    pub map: IntermediateMap,
    pub conjugate: ProjectivePoint,
    pub r_closure: Option<usize>,
    pub bounds: Option<OrderBounds>,
    pub prediction: DualGaloisPrediction,
    pub structure: Option<StructureTag>,
    /// The outer candidate search checks only coordinate vertices and
    /// user-supplied points; it is not a proof of completeness.
    pub outer_search_exhaustive: bool,
}

/// Attempt to put the curve in standard form with respect to `P`.
/// `Ok(None)` is a definite negative: `P` is not extendable Galois.
pub fn standard_form(
    curve: &PlaneCurve,
    p: &ProjectivePoint,
) -> Result<Option<StandardFormCertificate>> {
    let pe = p
        .exact()
        .ok_or_else(|| Error::Unsupported("standard form needs exact point coordinates".into()))?
        .clone();
    let m = curve.multiplicity_at(p);
    if m >= 2 {
        return Err(Error::UnsupportedMultiplicity(m));
    }
    let d = curve.degree();
    let frame = frame_to_first_vertex(&pe);
    let f1 = curve.poly().transform(&frame);
    let forms = x_coefficient_forms(&f1, d);

    if m == 0 {
        // Outer: F = a0 X^d + A_1 X^(d-1) + ...; the only shift that can
        // kill the X^(d-1) term is X -> X - A_1/(d a0).
        let a0 = forms[0].coeff(0);
        debug_assert!(!a0.is_zero(), "multiplicity 0 forces a nonzero X^d term");
        let dq = Ext::from_int(d as i64) * a0.clone();
        let shift = shear_matrix(
            &(-(forms[1].coeff(0) / dq.clone())),
            &(-(forms[1].coeff(1) / dq)),
        );
        let transform = frame.mul(&shift);
        let f2 = f1.transform(&shift).scale(&a0.inv());
        let forms2 = x_coefficient_forms(&f2, d);
        if forms2[1..d].iter().any(|a| !a.is_zero()) {
            return Ok(None);
        }
        return Ok(Some(StandardFormCertificate {
            transform,
            kind: GaloisKind::Outer,
            point: p.clone(),
            degree: d,
            g_m: BinaryForm::new(vec![Ext::one()]),
            g_d: forms2[d].clone(),
            std_poly: f2,
        }));
    }

    // Inner: F = A_1 X^(d-1) + ... with A_1 the tangent direction at P.
    // Rotate (Y, Z) so the tangent line becomes {Z = 0}.
    let (a, b) = (forms[1].coeff(0), forms[1].coeff(1));
    debug_assert!(
        !(a.is_zero() && b.is_zero()),
        "multiplicity 1 forces a nonzero X^(d-1) coefficient"
    );
    let rot = rotation_to_z(&a, &b);
    let f2 = f1.transform(&rot);
    let forms2 = x_coefficient_forms(&f2, d);
    debug_assert_eq!(forms2[1], BinaryForm::new(vec![Ext::zero(), Ext::one()]));
    // The shift X -> X - A_2/((d-1) Z) is polynomial only when Z | A_2.
    let a2 = &forms2[2];
    if !a2.coeff(0).is_zero() {
        return Ok(None);
    }
    let dm1 = Ext::from_int(d as i64 - 1);
    let shift = shear_matrix(
        &(-(a2.coeff(1) / dm1.clone())),
        &(-(a2.coeff(2) / dm1)),
    );
    let transform = frame.mul(&rot).mul(&shift);
    let f3 = f2.transform(&shift);
    let forms3 = x_coefficient_forms(&f3, d);
    if forms3[2..d].iter().any(|a| !a.is_zero()) {
        return Ok(None);
    }
    let g_d = forms3[d].clone();
    if g_d.coeff(0).is_zero() {
        // Z | G_d would make Z divide the whole curve; irreducibility
        // excludes it, so all factors of G_d are monic in Y (Lemma-4.1 shape)
        return Err(Error::Degenerate(
            "inner standard form with Z dividing G contradicts irreducibility".into(),
        ));
    }
    Ok(Some(StandardFormCertificate {
        transform,
        kind: GaloisKind::Inner,
        point: p.clone(),
        degree: d,
        g_m: BinaryForm::new(vec![Ext::zero(), Ext::one()]),
        g_d,
        std_poly: f3,
    }))
}

/// The conjugate point in the dual plane: `(1:0:0)` in the dual coordinates
/// of the standard frame, pulled back to the original dual frame. Lines
/// transform contravariantly, so the pullback is the inverse-transpose of
/// the point transform — concretely, the first row of the inverse.
pub fn conjugate_point(cert: &StandardFormCertificate) -> ProjectivePoint {
    let inv = cert.transform.inverse();
    ProjectivePoint::from_exact(inv.row(0).clone())
}

/// The intermediate map `f_P`, reduced by its exact gcd, with its degree `r`
/// and the distinct-factor count `n` of `G_d`.
pub fn intermediate_map(cert: &StandardFormCertificate) -> Result<IntermediateMap> {
    let g = &cert.g_d;
    let z = BinaryForm::new(vec![Ext::zero(), Ext::one()]);
    let (num0, den0) = match cert.kind {
        GaloisKind::Outer => (g.derive_y(), g.derive_z()),
        GaloisKind::Inner => (g.derive_y().mul(&z), g.neg().add(&g.derive_z().mul(&z))),
    };
    if num0.is_zero() || den0.is_zero() {
        return Err(Error::Degenerate(
            "intermediate map degenerates to a constant".into(),
        ));
    }
    let gcd = num0.gcd(&den0);
    let (num, den) = if gcd.degree() > 0 {
        (num0.div_exact(&gcd), den0.div_exact(&gcd))
    } else {
        (num0, den0)
    };
    let r = num.degree();
    debug_assert_eq!(r, den.degree());
    let n = binary_factor_profile(g)?.distinct_count();
    let expected = match cert.kind {
        GaloisKind::Outer => n - 1,
        GaloisKind::Inner => n,
    };
    if r != expected {
        return Err(Error::Validation(format!(
            "degree of f_P is {r} but the factor count n = {n} demands {expected}"
        )));
    }
    Ok(IntermediateMap { num, den, r, n })
}

/// Theorem-level order bounds for the conjugate-point group:
/// `base*r <= |G| <= R*base^r` with `base = d - m`, plus the sharper
/// `r*base^r` when `f_P` is itself Galois.
pub fn group_order_bounds(
    cert: &StandardFormCertificate,
    r: usize,
    r_closure: usize,
    fp_galois: bool,
) -> OrderBounds {
    assert!(r >= 1 && r_closure >= r, "closure degree below map degree");
    let base = cert.zeta_order();
    let pow = base.pow(r as u32);
    OrderBounds {
        lower: base * r,
        upper: r_closure * pow,
        sharp_upper: fp_galois.then_some(r * pow),
    }
}

/// Predict whether the conjugate point is Galois for the dual curve, with
/// the group order when the theorems pin it down.
pub fn predict_dual_galois(
    cert: &StandardFormCertificate,
    map: &IntermediateMap,
) -> Result<DualGaloisPrediction> {
    let base = cert.zeta_order();
    if map.r == 1 {
        return Ok(DualGaloisPrediction::Galois {
            predicted_order: base,
        });
    }
    let predicted_order = if map.r == 2 {
        match cert.kind {
            // |G| = 2d^2 needs the projection to ramify at a smooth point of
            // the curve; the points over X = 0 have multiplicity equal to
            // the multiplicity of the matching factor of G, so a simple
            // factor is exactly a smooth totally-ramified point.
            GaloisKind::Outer => binary_factor_profile(&cert.g_d)?
                .factors
                .iter()
                .any(|&(_, _, m)| m == 1)
                .then_some(2 * base * base),
            GaloisKind::Inner => Some(2 * base * base),
        }
    } else {
        None
    };
    Ok(DualGaloisPrediction::NotGalois { predicted_order })
}

/// Predicted isomorphism type, when one of the structure theorems applies.
pub fn predict_group_structure(
    cert: &StandardFormCertificate,
    map: &IntermediateMap,
) -> Option<StructureTag> {
    if map.r != 2 {
        return None;
    }
    let base = cert.zeta_order();
    if base == 2 && cert.kind == GaloisKind::Inner {
        // d = 3 inner: p = 2 is excluded from the odd-prime theorem, but the
        // nodal-cubic analysis gives D_8 directly.
        return Some(StructureTag::D8);
    }
    if base >= 3 && is_prime(base) {
        return Some(StructureTag::ZpCrossD2p { p: base });
    }
    None
}

/// Assemble the full pre-monodromy report for a certified point.
pub fn build_report(curve: &PlaneCurve, cert: StandardFormCertificate) -> Result<GaloisPointReport> {
    let _ = curve;
    let map = intermediate_map(&cert)?;
    let conjugate = conjugate_point(&cert);
    // a degree-1 map is its own closure and any degree-2 extension of
    // function fields is Galois, so R is forced for r <= 2; larger r comes
    // from the monodromy of f_P as a cover of the line
    let (r_closure, fp_galois) = if map.r <= 2 {
        (Some(map.r), true)
    } else {
        let (_, g) = rational_map_monodromy(&map, &MonodromyOptions::default())?;
        (Some(g.order()), g.order() == map.r)
    };
    let bounds = r_closure.map(|rc| group_order_bounds(&cert, map.r, rc, fp_galois));
    let prediction = predict_dual_galois(&cert, &map)?;
    let structure = predict_group_structure(&cert, &map);
    Ok(GaloisPointReport {
        cert,
        map,
        conjugate,
        r_closure,
        bounds,
        prediction,
        structure,
        outer_search_exhaustive: false,
    })
}

/// Search for extendable Galois points among the canonical candidates: all
/// flexes whose tangent meets the curve with full multiplicity `d` (total
/// ramification is necessary for an inner Galois point), the coordinate
/// vertices, and any user-supplied extras. The inner list is complete; the
/// outer list is candidates-only.
pub fn find_extendable_galois_points(
    curve: &PlaneCurve,
    extras: &[ProjectivePoint],
) -> Result<Vec<GaloisPointReport>> {
    let d = curve.degree();
    let mut candidates: Vec<ProjectivePoint> = Vec::new();
    let push = |p: ProjectivePoint, list: &mut Vec<ProjectivePoint>| {
        if !list.iter().any(|q| *q == p) {
            list.push(p);
        }
    };
    for q in curve.flexes() {
        if !q.is_exact() {
            continue;
        }
        let t = curve.tangent_line(q)?;
        if curve.intersection_multiplicity(&t, q)? == d {
            push(q.clone(), &mut candidates);
        }
    }
    for v in 0..3 {
        let mut c = [Ext::zero(), Ext::zero(), Ext::zero()];
        c[v] = Ext::one();
        push(ProjectivePoint::from_exact(c), &mut candidates);
    }
    for p in extras {
        if p.is_exact() {
            push(p.clone(), &mut candidates);
        }
    }

    let mut reports = Vec::new();
    for p in &candidates {
        if curve.multiplicity_at(p) >= 2 {
            continue; // singular candidates are out of scope, not errors
        }
        if let Some(cert) = standard_form(curve, p)? {
            reports.push(build_report(curve, cert)?);
        }
    }
    Ok(reports)
}

/// Monodromy-confirmed facts about one conjugate point on the dual side.
#[derive(Clone, Debug)]
pub struct VerifiedDualPoint {
    pub report: GaloisPointReport,
    /// Whether the conjugate point lies on the dual curve.
    pub conjugate_on_dual: bool,
    pub certificate: MonodromyCertificate,
    pub group_order: usize,
    pub group_class: GroupClass,
    /// A regular monodromy group means the conjugate point is Galois.
    pub regular: bool,
}

/// Outcome of checking a cuspless cubic against the dual-curve structure
/// theorems: per-point monodromy results plus named pass/fail checks.
#[derive(Clone, Debug)]
pub struct CubicVerification {
    pub nodal: bool,
    /// Operational Fermat-equivalence criterion: three outer extendable
    /// Galois points exist.
    pub fermat_equivalent: bool,
    pub dual_degree: usize,
    pub points: Vec<VerifiedDualPoint>,
    pub checks: Vec<(String, bool)>,
    pub passed: bool,
}

/// Verify a cuspless cubic against the dual-curve theorems: find all
/// extendable Galois points, run the monodromy of the projection from each
/// conjugate point on the dual curve, classify the groups, and check the
/// expected counts and types. Nodal cubics must show exactly three conjugate
/// points with group `D_8`; smooth cubics show nine inner conjugates with
/// group order in `{12, 24, 48}` and none Galois, plus — exactly when the
/// curve is projectively Fermat — three outer conjugates of type
/// `Z/3 x S_3`.
pub fn verify_cubic(
    curve: &PlaneCurve,
    opts: &MonodromyOptions,
) -> Result<CubicVerification> {
    if curve.degree() != 3 {
        return Err(Error::Unsupported(
            "cubic verification needs a degree-3 curve".into(),
        ));
    }
    if curve
        .singular_points()
        .iter()
        .any(|s| s.class == SingClass::Cusp)
    {
        return Err(Error::Unsupported(
            "cuspidal cubics are outside the theorem's hypothesis".into(),
        ));
    }
    let nodal = !curve.singular_points().is_empty();
    let dual = dual_curve(curve)?;
    if !dual.exact_verified {
        return Err(Error::Numerical(
            "dual curve could not be certified exactly".into(),
        ));
    }
    let genus = curve.genus();
    let reports = find_extendable_galois_points(curve, &[])?;

    let mut points = Vec::new();
    for report in reports {
        let conj = report
            .conjugate
            .exact()
            .expect("conjugate points of exact certificates are exact")
            .clone();
        let conjugate_on_dual = dual.poly.evaluate(&conj).is_zero();
        let (certificate, group) = projection_monodromy(&dual.poly, &conj, genus, opts)?;
        let regular = group.is_regular().unwrap_or(false);
        points.push(VerifiedDualPoint {
            report,
            conjugate_on_dual,
            group_order: group.order(),
            group_class: group.classify(),
            regular,
            certificate,
        });
    }

    let mut checks: Vec<(String, bool)> = Vec::new();
    let check = |name: &str, ok: bool, list: &mut Vec<(String, bool)>| {
        list.push((name.to_string(), ok));
    };

    check(
        "confirmed orders lie within the theorem bounds",
        points.iter().all(|p| {
            p.report
                .bounds
                .map_or(true, |b| b.lower <= p.group_order && p.group_order <= b.upper)
        }),
        &mut checks,
    );
    check(
        "predicted orders match the monodromy groups",
        points.iter().all(|p| {
            p.report
                .prediction
                .predicted_order()
                .map_or(true, |o| o == p.group_order)
        }),
        &mut checks,
    );
    check(
        "predicted structures match the classified groups",
        points.iter().all(|p| match p.report.structure {
            Some(StructureTag::D8) => p.group_class == GroupClass::D8,
            Some(StructureTag::ZpCrossD2p { p: q }) => {
                p.group_class == GroupClass::ZpCrossD2p { p: q }
            }
            None => true,
        }),
        &mut checks,
    );
    check(
        "conjugate points are pairwise distinct",
        (0..points.len()).all(|i| {
            (0..i).all(|j| points[i].report.conjugate != points[j].report.conjugate)
        }),
        &mut checks,
    );

    let inner = points
        .iter()
        .filter(|p| p.report.cert.kind == GaloisKind::Inner)
        .count();
    let outer = points.len() - inner;
    let fermat_equivalent = outer == 3;

    if nodal {
        check(
            "nodal cubic has exactly three extendable Galois points, all inner",
            points.len() == 3 && inner == 3,
            &mut checks,
        );
        check(
            "all conjugate points lie off the dual curve",
            points.iter().all(|p| !p.conjugate_on_dual),
            &mut checks,
        );
        check(
            "every conjugate group is D_8",
            points
                .iter()
                .all(|p| p.group_class == GroupClass::D8 && p.group_order == 8),
            &mut checks,
        );
    } else {
        check(
            "smooth cubic has nine inner extendable Galois points",
            inner == 9,
            &mut checks,
        );
        check(
            "outer point count is zero or three",
            outer == 0 || outer == 3,
            &mut checks,
        );
        check(
            "no conjugate point is Galois for the dual curve",
            points.iter().all(|p| !p.regular),
            &mut checks,
        );
        check(
            "inner conjugate orders lie in {12, 24, 48}",
            points
                .iter()
                .filter(|p| p.report.cert.kind == GaloisKind::Inner)
                .all(|p| [12, 24, 48].contains(&p.group_order)),
            &mut checks,
        );
        if fermat_equivalent {
            check(
                "three outer conjugates have group Z/3 x S_3 of order 18",
                points
                    .iter()
                    .filter(|p| p.report.cert.kind == GaloisKind::Outer)
                    .all(|p| {
                        p.group_order == 18
                            && p.group_class == GroupClass::ZpCrossD2p { p: 3 }
                    }),
                &mut checks,
            );
        }
    }

    let passed = checks.iter().all(|(_, ok)| *ok);
    Ok(CubicVerification {
        nodal,
        fermat_equivalent,
        dual_degree: dual.degree,
        points,
        checks,
        passed,
    })
}

/// Exact frame sending `(1:0:0)` to `p`: first column `p`, completed by the
/// two standard basis vectors away from `p`'s leading coordinate.
pub(crate) fn frame_to_first_vertex(p: &[Ext; 3]) -> Mat3 {
    let lead = (0..3).find(|&i| !p[i].is_zero()).expect("projective point");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let mut cols: [[Ext; 3]; 3] = [
        p.clone(),
        [Ext::zero(), Ext::zero(), Ext::zero()],
        [Ext::zero(), Ext::zero(), Ext::zero()],
    ];
    cols[1][others[0]] = Ext::one();
    cols[2][others[1]] = Ext::one();
    // columns to rows
    Mat3::from_rows([
        [cols[0][0].clone(), cols[1][0].clone(), cols[2][0].clone()],
        [cols[0][1].clone(), cols[1][1].clone(), cols[2][1].clone()],
        [cols[0][2].clone(), cols[1][2].clone(), cols[2][2].clone()],
    ])
}

/// `X -> X + ly*Y + lz*Z`, fixing `Y` and `Z`.
fn shear_matrix(ly: &Ext, lz: &Ext) -> Mat3 {
    Mat3::from_rows([
        [Ext::one(), ly.clone(), lz.clone()],
        [Ext::zero(), Ext::one(), Ext::zero()],
        [Ext::zero(), Ext::zero(), Ext::one()],
    ])
}

/// A change of `(Y, Z)` coordinates under which the linear form `aY + bZ`
/// becomes the new `Z`. The matrix gives old coordinates from new ones.
pub(crate) fn rotation_to_z(a: &Ext, b: &Ext) -> Mat3 {
    if !b.is_zero() {
        // Y = Y', Z = (Z' - a Y') / b
        let binv = b.inv();
        Mat3::from_rows([
            [Ext::one(), Ext::zero(), Ext::zero()],
            [Ext::zero(), Ext::one(), Ext::zero()],
            [
                Ext::zero(),
                -(a.clone() * binv.clone()),
                binv,
            ],
        ])
    } else {
        // aY = Z': Y = Z'/a, Z = Y'
        Mat3::from_rows([
            [Ext::one(), Ext::zero(), Ext::zero()],
            [Ext::zero(), Ext::zero(), a.inv()],
            [Ext::zero(), Ext::one(), Ext::zero()],
        ])
    }
}

/// Binary coefficient forms `A_j(Y, Z)` of `F = sum X^(d-j) A_j`.
pub(crate) fn x_coefficient_forms(f: &HomPoly, d: usize) -> Vec<BinaryForm> {
    let mut out: Vec<Vec<Ext>> = (0..=d).map(|j| vec![Ext::zero(); j + 1]).collect();
    for (&(i, _j, k), c) in f.terms() {
        let j = d - i as usize;
        out[j][k as usize] = c.clone();
    }
    out.into_iter().map(BinaryForm::new).collect()
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_hompoly, parse_point};

    fn curve(src: &str) -> PlaneCurve {
        PlaneCurve::new(parse_hompoly(src).unwrap()).unwrap()
    }

    fn pt(src: &str) -> ProjectivePoint {
        ProjectivePoint::from_exact(parse_point(src).unwrap())
    }

    fn bf(ints: &[i64]) -> BinaryForm {
        BinaryForm::new(ints.iter().map(|&n| Ext::from_int(n)).collect())
    }

    /// Projective equality of two reduced maps (num : den).
    fn same_map(m: &IntermediateMap, num: &BinaryForm, den: &BinaryForm) {
        assert_eq!(m.num.mul(den), m.den.mul(num), "maps differ projectively");
    }

    #[test]
    fn fermat_outer_certificate() {
        let c = curve("X^3 + Y^3 + Z^3");
        let cert = standard_form(&c, &pt("1:0:0")).unwrap().unwrap();
        assert_eq!(cert.kind, GaloisKind::Outer);
        assert_eq!(cert.zeta_order(), 3);
        assert_eq!(cert.g_d, bf(&[1, 0, 0, 1]));
        assert_eq!(conjugate_point(&cert), pt("1:0:0"));
        let m = intermediate_map(&cert).unwrap();
        same_map(&m, &bf(&[1, 0, 0]), &bf(&[0, 0, 1])); // (Y^2 : Z^2)
        assert_eq!((m.r, m.n), (2, 3));
        let b = group_order_bounds(&cert, m.r, 2, true);
        assert_eq!((b.lower, b.upper), (6, 18));
        assert_eq!(b.sharp_upper, Some(18));
        let p = predict_dual_galois(&cert, &m).unwrap();
        assert_eq!(p.predicted_order(), Some(18));
        assert!(!p.is_galois());
        assert_eq!(
            predict_group_structure(&cert, &m),
            Some(StructureTag::ZpCrossD2p { p: 3 })
        );
    }

    #[test]
    fn fermat_generic_point_is_not_galois() {
        let c = curve("X^3 + Y^3 + Z^3");
        assert!(standard_form(&c, &pt("1:1:1")).unwrap().is_none());
    }

    #[test]
    fn fermat_vertices_give_distinct_conjugates() {
        let c = curve("X^3 + Y^3 + Z^3");
        let conj: Vec<ProjectivePoint> = ["1:0:0", "0:1:0", "0:0:1"]
            .iter()
            .map(|s| {
                let cert = standard_form(&c, &pt(s)).unwrap().unwrap();
                conjugate_point(&cert)
            })
            .collect();
        assert_eq!(conj[0], pt("1:0:0"));
        assert_eq!(conj[1], pt("0:1:0"));
        assert_eq!(conj[2], pt("0:0:1"));
    }

    #[test]
    fn nodal_cubic_inner_certificate() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        let cert = standard_form(&c, &pt("1:0:0")).unwrap().unwrap();
        assert_eq!(cert.kind, GaloisKind::Inner);
        assert_eq!(cert.zeta_order(), 2);
        assert_eq!(cert.g_m, bf(&[0, 1]));
        assert_eq!(cert.g_d, bf(&[1, 1, 0, 0])); // Y^3 + Y^2 Z
        let m = intermediate_map(&cert).unwrap();
        // ((3Y + 2Z) Z : -Y^2)
        same_map(&m, &bf(&[0, 3, 2]), &bf(&[-1, 0, 0]));
        assert_eq!((m.r, m.n), (2, 2));
        let b = group_order_bounds(&cert, m.r, 2, true);
        assert_eq!((b.lower, b.upper), (4, 8));
        assert_eq!(
            predict_dual_galois(&cert, &m).unwrap().predicted_order(),
            Some(8)
        );
        assert_eq!(predict_group_structure(&cert, &m), Some(StructureTag::D8));
    }

    #[test]
    fn quartic_inner_with_odd_prime_base() {
        let c = curve("X^3*Z + Y^3*(Y + Z)");
        let cert = standard_form(&c, &pt("1:0:0")).unwrap().unwrap();
        assert_eq!(cert.kind, GaloisKind::Inner);
        let m = intermediate_map(&cert).unwrap();
        // ((4Y + 3Z) Z : -Y^2) after cancelling Y^2
        same_map(&m, &bf(&[0, 4, 3]), &bf(&[-1, 0, 0]));
        assert_eq!((m.r, m.n), (2, 2));
        let b = group_order_bounds(&cert, m.r, 2, true);
        assert_eq!((b.lower, b.upper), (6, 18));
        assert_eq!(
            predict_group_structure(&cert, &m),
            Some(StructureTag::ZpCrossD2p { p: 3 })
        );
    }

    #[test]
    fn cyclic_outer_curve() {
        // X^3 - Y Z^2: the conjugate point is Galois with |G| = 3
        let c = curve("X^3 - Y*Z^2");
        let cert = standard_form(&c, &pt("1:0:0")).unwrap().unwrap();
        assert_eq!(cert.kind, GaloisKind::Outer);
        let m = intermediate_map(&cert).unwrap();
        assert_eq!((m.r, m.n), (1, 2));
        let p = predict_dual_galois(&cert, &m).unwrap();
        assert!(p.is_galois());
        assert_eq!(p.predicted_order(), Some(3));
    }

    #[test]
    fn cyclic_inner_curve() {
        // X^3 Z - Y^4: the conjugate point is Galois with |G| = 3
        let c = curve("X^3*Z - Y^4");
        let cert = standard_form(&c, &pt("1:0:0")).unwrap().unwrap();
        assert_eq!(cert.kind, GaloisKind::Inner);
        let m = intermediate_map(&cert).unwrap();
        assert_eq!((m.r, m.n), (1, 1));
        let p = predict_dual_galois(&cert, &m).unwrap();
        assert!(p.is_galois());
        assert_eq!(p.predicted_order(), Some(3));
    }

    #[test]
    fn singular_candidate_rejected() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        let e = standard_form(&c, &pt("0:0:1")).unwrap_err();
        assert!(matches!(e, Error::UnsupportedMultiplicity(2)), "{e}");
    }

    #[test]
    fn off_vertex_galois_point_found() {
        // move the Fermat cubic by a shear; the Galois point follows
        let c = curve("(X + Y)^3 + Y^3 + Z^3");
        let cert = standard_form(&c, &pt("1:0:0")).unwrap().unwrap();
        assert_eq!(cert.kind, GaloisKind::Outer);
        let m = intermediate_map(&cert).unwrap();
        assert_eq!((m.r, m.n), (2, 3));
    }

    #[test]
    fn fermat_search_finds_all_twelve() {
        let c = curve("X^3 + Y^3 + Z^3");
        let reports = find_extendable_galois_points(&c, &[]).unwrap();
        let outer = reports
            .iter()
            .filter(|r| r.cert.kind == GaloisKind::Outer)
            .count();
        let inner = reports
            .iter()
            .filter(|r| r.cert.kind == GaloisKind::Inner)
            .count();
        assert_eq!(outer, 3);
        assert_eq!(inner, 9);
        // conjugate points are pairwise distinct (P -> conjugate is injective)
        for i in 0..reports.len() {
            for j in 0..i {
                assert_ne!(reports[i].conjugate, reports[j].conjugate);
            }
        }
    }

    #[test]
    fn verify_nodal_cubic_theorem() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        let v = verify_cubic(&c, &MonodromyOptions::default()).unwrap();
        assert!(v.nodal);
        assert!(!v.fermat_equivalent);
        assert_eq!(v.dual_degree, 4);
        assert_eq!(v.points.len(), 3);
        for p in &v.points {
            assert_eq!(p.group_class, GroupClass::D8);
            assert!(!p.conjugate_on_dual);
            assert!(!p.regular);
        }
        assert!(v.passed, "failed checks: {:?}", v.checks);
    }

    #[test]
    fn verify_fermat_cubic_theorem() {
        let c = curve("X^3 + Y^3 + Z^3");
        let v = verify_cubic(&c, &MonodromyOptions::default()).unwrap();
        assert!(!v.nodal);
        assert!(v.fermat_equivalent);
        assert_eq!(v.dual_degree, 6);
        assert_eq!(v.points.len(), 12);
        let outer: Vec<_> = v
            .points
            .iter()
            .filter(|p| p.report.cert.kind == GaloisKind::Outer)
            .collect();
        assert_eq!(outer.len(), 3);
        for p in outer {
            assert_eq!(p.group_order, 18);
            assert_eq!(p.group_class, GroupClass::ZpCrossD2p { p: 3 });
        }
        for p in v
            .points
            .iter()
            .filter(|p| p.report.cert.kind == GaloisKind::Inner)
        {
            assert!([12, 24, 48].contains(&p.group_order), "{}", p.group_order);
        }
        assert!(v.passed, "failed checks: {:?}", v.checks);
    }

    #[test]
    fn verify_cubic_rejects_cusp() {
        let c = curve("X^3 - Y*Z^2");
        let e = verify_cubic(&c, &MonodromyOptions::default()).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)), "{e}");
    }

    #[test]
    fn nodal_cubic_search_finds_three_inner() {
        let c = curve("X^2*Z + Y^2*(Y + Z)");
        let reports = find_extendable_galois_points(&c, &[]).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.cert.kind == GaloisKind::Inner));
        assert!(reports
            .iter()
            .all(|r| r.structure == Some(StructureTag::D8)));
        for i in 0..reports.len() {
            for j in 0..i {
                assert_ne!(reports[i].conjugate, reports[j].conjugate);
            }
        }
    }
}
