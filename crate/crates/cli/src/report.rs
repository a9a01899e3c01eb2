//! JSON views of the library's report types.
//!
//! Exact scalars are rendered as display strings (parse-roundtrippable for
//! polynomials), floating-point data as plain JSON numbers. Field order is
//! fixed by insertion so identical runs emit identical bytes.

use galpoint::galois::{CubicVerification, DualGaloisPrediction, GaloisKind, GaloisPointReport};
use galpoint::monodromy::MonodromyCertificate;
use galpoint::{Mat3, MonodromyOptions, PlaneCurve, ProjectivePoint};
use num_complex::Complex64;
use serde_json::{json, Value};

pub fn mat_json(m: &Mat3) -> Value {
    Value::Array(
        (0..3)
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|e| Value::String(e.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn c64_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn point_json(p: &ProjectivePoint) -> Value {
    Value::String(p.display_string())
}

pub fn curve_json(c: &PlaneCurve) -> Value {
    json!({
        "polynomial": c.poly().to_string(),
        "degree": c.degree(),
        "genus": c.genus(),
        "singular_points": c.singular_points().iter().map(|s| json!({
            "point": s.point.display_string(),
            "multiplicity": s.multiplicity,
            "class": format!("{:?}", s.class),
        })).collect::<Vec<_>>(),
        "flexes": c.flexes().iter().map(point_json).collect::<Vec<_>>(),
    })
}

pub fn monodromy_json(cert: &MonodromyCertificate) -> Value {
    json!({
        "sheets": cert.sheets,
        "branch_points": cert.branch_points.iter().map(|&z| c64_json(z)).collect::<Vec<_>>(),
        "base_point": c64_json(cert.base_point),
        "base_fiber": cert.base_fiber.iter().map(|&z| c64_json(z)).collect::<Vec<_>>(),
        "loop_permutations": cert.loop_permutations.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "infinity_permutation": cert.infinity_permutation.to_string(),
        "product_check": cert.product_check,
        "revalidated": cert.revalidated,
        "precision": cert.precision,
        "seed": cert.seed,
        "group_order": cert.group_order,
        "transitive": cert.transitive,
        "riemann_hurwitz_ok": cert.riemann_hurwitz_ok,
    })
}

/// Monodromy confirmation attached to a Galois-point report.
pub struct Confirmation {
    pub order: usize,
    pub class_label: String,
    pub conjugate_on_dual: bool,
    pub certificate: MonodromyCertificate,
}

pub fn galois_report_json(r: &GaloisPointReport, confirmed: Option<&Confirmation>) -> Value {
    let kind = match r.cert.kind {
        GaloisKind::Outer => "outer",
        GaloisKind::Inner => "inner",
    };
    let predicted = match &r.prediction {
        DualGaloisPrediction::Galois { predicted_order } => json!({
            "galois": true,
            "order": predicted_order,
            "structure": format!("Z/{predicted_order}"),
        }),
        DualGaloisPrediction::NotGalois { predicted_order } => json!({
            "galois": false,
            "order": predicted_order,
            "structure": r.structure.map(|s| s.label()),
        }),
    };
    json!({
        "point": point_json(&r.cert.point),
        "kind": kind,
        "m": r.cert.multiplicity(),
        "transform": mat_json(&r.cert.transform),
        "G_m": r.cert.g_m.to_string(),
        "G_d": r.cert.g_d.to_string(),
        "conjugate_point": point_json(&r.conjugate),
        "f_P": { "num": r.map.num.to_string(), "den": r.map.den.to_string() },
        "r": r.map.r,
        "n": r.map.n,
        "R_closure": r.r_closure,
        "bounds": r.bounds.map(|b| json!({
            "lower": b.lower,
            "upper": b.upper,
            "sharp_upper": b.sharp_upper,
        })),
        "predicted_group": predicted,
        "confirmed_group": confirmed.map(|c| c.class_label.clone()),
        "confirmed_order": confirmed.map(|c| c.order),
        "conjugate_on_dual": confirmed.map(|c| c.conjugate_on_dual),
        "monodromy": confirmed.map(|c| monodromy_json(&c.certificate)),
    })
}

pub fn verification_json(v: &CubicVerification, opts: &MonodromyOptions) -> Value {
    json!({
        "nodal": v.nodal,
        "fermat_equivalent": v.fermat_equivalent,
        "dual_degree": v.dual_degree,
        "seed": opts.seed,
        "min_precision": opts.min_prec,
        "points": v.points.iter().map(|p| {
            let confirmation = Confirmation {
                order: p.group_order,
                class_label: p.group_class.label(),
                conjugate_on_dual: p.conjugate_on_dual,
                certificate: p.certificate.clone(),
            };
            galois_report_json(&p.report, Some(&confirmation))
        }).collect::<Vec<_>>(),
        "checks": v.checks.iter().map(|(name, ok)| json!({
            "name": name, "passed": ok,
        })).collect::<Vec<_>>(),
        "passed": v.passed,
    })
}
