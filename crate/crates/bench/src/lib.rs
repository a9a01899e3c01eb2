//! Shared fixtures for the benchmark suite.

use galpoint::poly::parse::{parse_hompoly, parse_point};
use galpoint::{PlaneCurve, ProjectivePoint};

pub fn fermat_cubic() -> PlaneCurve {
    PlaneCurve::new(parse_hompoly("X^3 + Y^3 + Z^3").unwrap()).unwrap()
}

pub fn nodal_cubic() -> PlaneCurve {
    PlaneCurve::new(parse_hompoly("X^2*Z + Y^2*(Y + Z)").unwrap()).unwrap()
}

pub fn point(src: &str) -> ProjectivePoint {
    ProjectivePoint::from_exact(parse_point(src).unwrap())
}
