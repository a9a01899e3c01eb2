//! Command implementations: each returns rendered text, a JSON value, and a
//! verification verdict used for the exit code.

use std::fmt::Write as _;

use galpoint::curve::dual::dual_curve;
use galpoint::galois::{find_extendable_galois_points, verify_cubic};
use galpoint::monodromy::{monodromy_group, projection_monodromy};
use galpoint::poly::parse::{parse_hompoly, parse_point};
use galpoint::{
    Error, MonodromyOptions, PermGroup, PlaneCurve, ProjectivePoint, Result,
};
use serde_json::{json, Value};

use crate::report;

/// Output of a command: both renderings plus the pass/fail verdict.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// `false` maps to exit code 1 (verification failure).
    pub passed: bool,
}

fn provenance(opts: &MonodromyOptions) -> Value {
    json!({ "seed": opts.seed, "min_precision": opts.min_prec })
}

pub fn cmd_analyze(curve: &PlaneCurve, opts: &MonodromyOptions) -> Result<Outcome> {
    let dual_deg = galpoint::curve::dual::dual_degree_estimate(curve);
    let mut text = String::new();
    writeln!(text, "curve: {}", curve.poly()).unwrap();
    writeln!(text, "degree: {}", curve.degree()).unwrap();
    match curve.genus() {
        Some(g) => writeln!(text, "genus: {g}").unwrap(),
        None => writeln!(text, "genus: unknown (unclassified singularity)").unwrap(),
    }
    if curve.singular_points().is_empty() {
        writeln!(text, "singular points: none (smooth)").unwrap();
    } else {
        writeln!(text, "singular points:").unwrap();
        for s in curve.singular_points() {
            writeln!(
                text,
                "  {} multiplicity {} ({:?})",
                s.point.display_string(),
                s.multiplicity,
                s.class
            )
            .unwrap();
        }
    }
    writeln!(text, "flexes: {}", curve.flexes().len()).unwrap();
    for q in curve.flexes() {
        writeln!(text, "  {}", q.display_string()).unwrap();
    }
    match dual_deg {
        Some(d) => writeln!(text, "dual degree (Pluecker estimate): {d}").unwrap(),
        None => writeln!(text, "dual degree: not estimable").unwrap(),
    }
    let json = json!({
        "command": "analyze",
        "provenance": provenance(opts),
        "curve": report::curve_json(curve),
        "dual_degree_estimate": dual_deg,
    });
    Ok(Outcome { text, json, passed: true })
}

pub fn cmd_dual(curve: &PlaneCurve, opts: &MonodromyOptions) -> Result<Outcome> {
    let dual = dual_curve(curve)?;
    let mut text = String::new();
    writeln!(text, "dual curve: {}", dual.poly).unwrap();
    writeln!(text, "dual degree: {}", dual.degree).unwrap();
    writeln!(
        text,
        "exact certificate: {}",
        if dual.exact_verified { "verified" } else { "NUMERIC ONLY" }
    )
    .unwrap();
    let json = json!({
        "command": "dual",
        "provenance": provenance(opts),
        "curve": curve.poly().to_string(),
        "dual": {
            "polynomial": dual.poly.to_string(),
            "degree": dual.degree,
            "exact_verified": dual.exact_verified,
        },
    });
    Ok(Outcome { text, json, passed: dual.exact_verified })
}

pub fn cmd_galois_points(
    curve: &PlaneCurve,
    extras: &[ProjectivePoint],
    confirm: bool,
    opts: &MonodromyOptions,
) -> Result<Outcome> {
    let reports = find_extendable_galois_points(curve, extras)?;
    let dual = if confirm { Some(dual_curve(curve)?) } else { None };
    let genus = curve.genus();

    let mut entries: Vec<Value> = Vec::new();
    let mut text = String::new();
    writeln!(text, "extendable Galois points: {}", reports.len()).unwrap();
    let mut all_consistent = true;
    for r in &reports {
        let confirmation = match &dual {
            Some(dc) => {
                let conj = r
                    .conjugate
                    .exact()
                    .expect("conjugates of exact certificates are exact")
                    .clone();
                let on_dual = dc.poly.evaluate(&conj).is_zero();
                let (cert, group) = projection_monodromy(&dc.poly, &conj, genus, opts)?;
                Some(report::Confirmation {
                    order: group.order(),
                    class_label: group.classify().label(),
                    conjugate_on_dual: on_dual,
                    certificate: cert,
                })
            }
            None => None,
        };
        let kind = match r.cert.kind {
            galpoint::GaloisKind::Outer => "outer",
            galpoint::GaloisKind::Inner => "inner",
        };
        write!(
            text,
            "  {} ({kind}, r = {}, conjugate {})",
            r.cert.point.display_string(),
            r.map.r,
            r.conjugate.display_string()
        )
        .unwrap();
        match (&confirmation, r.bounds) {
            (Some(c), bounds) => {
                let in_bounds =
                    bounds.map_or(true, |b| b.lower <= c.order && c.order <= b.upper);
                let order_match = r
                    .prediction
                    .predicted_order()
                    .map_or(true, |o| o == c.order);
                all_consistent &= in_bounds && order_match;
                writeln!(text, " -> |G| = {} [{}]", c.order, c.class_label).unwrap();
            }
            (None, _) => match r.prediction.predicted_order() {
                Some(o) => writeln!(text, " -> predicted |G| = {o}").unwrap(),
                None => writeln!(text).unwrap(),
            },
        }
        entries.push(report::galois_report_json(r, confirmation.as_ref()));
    }
    if !reports.iter().any(|r| r.outer_search_exhaustive) {
        writeln!(text, "note: outer search covers candidates only").unwrap();
    }
    let json = json!({
        "command": "galois-points",
        "provenance": provenance(opts),
        "curve": curve.poly().to_string(),
        "confirmed": confirm,
        "reports": entries,
    });
    Ok(Outcome { text, json, passed: all_consistent })
}

pub fn cmd_monodromy(
    curve_src: &str,
    point_src: &str,
    opts: &MonodromyOptions,
) -> Result<Outcome> {
    let point = parse_point(point_src)?;
    // full curve analysis supplies the genus for the Riemann-Hurwitz check,
    // but highly singular inputs (dual curves) still get their monodromy
    let (cert, group) = match PlaneCurve::new(parse_hompoly(curve_src)?) {
        Ok(c) => monodromy_group(&c, &ProjectivePoint::from_exact(point), opts)?,
        Err(Error::Reducible { factor }) => return Err(Error::Reducible { factor }),
        Err(_) => projection_monodromy(&parse_hompoly(curve_src)?, &point, None, opts)?,
    };
    let outcome = render_monodromy(&cert, &group, opts);
    Ok(outcome)
}

fn render_monodromy(
    cert: &galpoint::MonodromyCertificate,
    group: &PermGroup,
    opts: &MonodromyOptions,
) -> Outcome {
    let mut text = String::new();
    writeln!(text, "sheets: {}", cert.sheets).unwrap();
    writeln!(text, "branch points: {}", cert.branch_points.len()).unwrap();
    for (b, p) in cert.branch_points.iter().zip(&cert.loop_permutations) {
        writeln!(text, "  t = {:.6} + {:.6}i -> {}", b.re, b.im, p).unwrap();
    }
    writeln!(text, "  t = infinity -> {}", cert.infinity_permutation).unwrap();
    writeln!(text, "group order: {}", group.order()).unwrap();
    writeln!(text, "classification: {}", group.classify().label()).unwrap();
    writeln!(
        text,
        "regular (Galois): {}",
        group.is_regular().unwrap_or(false)
    )
    .unwrap();
    writeln!(text, "product check: {}", cert.product_check).unwrap();
    writeln!(text, "revalidated: {}", cert.revalidated).unwrap();
    if let Some(ok) = cert.riemann_hurwitz_ok {
        writeln!(text, "Riemann-Hurwitz balance: {ok}").unwrap();
    }
    let passed = cert.product_check && cert.revalidated && cert.riemann_hurwitz_ok != Some(false);
    let json = json!({
        "command": "monodromy",
        "provenance": provenance(opts),
        "certificate": report::monodromy_json(cert),
        "group_order": group.order(),
        "classification": group.classify().label(),
        "regular": group.is_regular().unwrap_or(false),
    });
    Outcome { text, json, passed }
}

pub fn cmd_verify_cubic(curve: &PlaneCurve, opts: &MonodromyOptions) -> Result<Outcome> {
    let v = verify_cubic(curve, opts)?;
    let mut text = String::new();
    writeln!(
        text,
        "cubic type: {}",
        if v.nodal {
            "nodal"
        } else if v.fermat_equivalent {
            "smooth, Fermat-equivalent"
        } else {
            "smooth"
        }
    )
    .unwrap();
    writeln!(text, "dual degree: {}", v.dual_degree).unwrap();
    writeln!(text, "conjugate points verified: {}", v.points.len()).unwrap();
    for p in &v.points {
        writeln!(
            text,
            "  {} -> |G| = {} [{}]{}",
            p.report.conjugate.display_string(),
            p.group_order,
            p.group_class.label(),
            if p.conjugate_on_dual { " (on C*)" } else { "" }
        )
        .unwrap();
    }
    for (name, ok) in &v.checks {
        writeln!(text, "[{}] {}", if *ok { "PASS" } else { "FAIL" }, name).unwrap();
    }
    writeln!(text, "verdict: {}", if v.passed { "PASS" } else { "FAIL" }).unwrap();
    let passed = v.passed;
    let json = json!({
        "command": "verify-cubic",
        "provenance": provenance(opts),
        "curve": curve.poly().to_string(),
        "verification": report::verification_json(&v, opts),
    });
    Ok(Outcome { text, json, passed })
}
