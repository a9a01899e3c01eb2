//! Points of the projective plane, numeric with optional exact coordinates.

use num_complex::Complex64;
use std::fmt;

use crate::ext::Ext;

/// Tolerance for deciding numeric coincidence of projective points.
pub const POINT_TOL: f64 = 1e-6;

/// A point of `P^2` (or of the dual plane, as line coordinates). The numeric
/// coordinates are always present and normalized so the first coordinate of
/// modulus above `POINT_TOL` equals 1; exact coordinates, when known, are
/// normalized the same way.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    coords: [Complex64; 3],
    exact: Option<[Ext; 3]>,
}

impl ProjectivePoint {
    pub fn from_exact(p: [Ext; 3]) -> Self {
        assert!(!p.iter().all(|c| c.is_zero()), "zero vector is not projective");
        let lead = p.iter().find(|c| !c.is_zero()).unwrap().clone();
        let inv = lead.inv();
        let exact: [Ext; 3] = [
            p[0].clone() * inv.clone(),
            p[1].clone() * inv.clone(),
            p[2].clone() * inv,
        ];
        let coords = [exact[0].to_c64(), exact[1].to_c64(), exact[2].to_c64()];
        ProjectivePoint {
            coords,
            exact: Some(exact),
        }
    }

    pub fn from_c64(p: [Complex64; 3]) -> Self {
        let norm: f64 = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(norm > 0.0, "zero vector is not projective");
        let lead = *p.iter().find(|c| c.norm() > POINT_TOL * norm).unwrap();
        ProjectivePoint {
            coords: [p[0] / lead, p[1] / lead, p[2] / lead],
            exact: None,
        }
    }

    pub fn coords(&self) -> &[Complex64; 3] {
        &self.coords
    }

    pub fn exact(&self) -> Option<&[Ext; 3]> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Scale-invariant numeric equality via pairwise cross products.
    pub fn approx_eq(&self, other: &ProjectivePoint, tol: f64) -> bool {
        let a = &self.coords;
        let b = &other.coords;
        let scale = a
            .iter()
            .chain(b.iter())
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        for i in 0..3 {
            for j in (i + 1)..3 {
                if (a[i] * b[j] - a[j] * b[i]).norm() > tol * scale * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Render exact coordinates when available, else numeric.
    pub fn display_string(&self) -> String {
        match &self.exact {
            Some(e) => format!("({} : {} : {})", e[0], e[1], e[2]),
            None => {
                let f = |c: &Complex64| {
                    if c.im.abs() < 1e-9 {
                        format!("{:.6}", c.re)
                    } else {
                        format!("{:.6}{:+.6}i", c.re, c.im)
                    }
                };
                format!(
                    "({} : {} : {})",
                    f(&self.coords[0]),
                    f(&self.coords[1]),
                    f(&self.coords[2])
                )
            }
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_string())
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a == b;
        }
        self.approx_eq(other, POINT_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_normalization() {
        let p = ProjectivePoint::from_exact([Ext::from_int(2), Ext::from_int(4), Ext::from_int(-2)]);
        let e = p.exact().unwrap();
        assert_eq!(e[0], Ext::one());
        assert_eq!(e[1], Ext::from_int(2));
        assert_eq!(e[2], Ext::from_int(-1));
    }

    #[test]
    fn scale_invariant_equality() {
        let p = ProjectivePoint::from_c64([
            Complex64::new(2.0, 0.0),
            Complex64::new(4.0, 0.0),
            Complex64::new(-2.0, 0.0),
        ]);
        let q = ProjectivePoint::from_exact([Ext::one(), Ext::from_int(2), Ext::from_int(-1)]);
        assert!(p.approx_eq(&q, 1e-9));
        assert_eq!(p, q);
    }

    #[test]
    fn leading_zero_coordinate() {
        let p = ProjectivePoint::from_exact([Ext::zero(), Ext::from_int(3), Ext::from_int(-3)]);
        let e = p.exact().unwrap();
        assert!(e[0].is_zero());
        assert_eq!(e[1], Ext::one());
        assert_eq!(e[2], Ext::from_int(-1));
    }

    #[test]
    fn distinct_points_differ() {
        let p = ProjectivePoint::from_exact([Ext::one(), Ext::zero(), Ext::zero()]);
        let q = ProjectivePoint::from_exact([Ext::one(), Ext::one(), Ext::zero()]);
        assert_ne!(p, q);
    }
}
