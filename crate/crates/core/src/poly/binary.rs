//! Binary forms `g(Y, Z)` and their projective factor profiles.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::poly::roots::{complex_roots, SEPARATION_TOL};
use crate::poly::uni::UniPoly;

/// A homogeneous form in two variables `(Y, Z)`; `coeffs[i]` multiplies
/// `Y^(d-i) * Z^i` where `d = coeffs.len() - 1`. Identically-zero forms keep
/// their length so the intended degree is not lost.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Ext>,
}

/// Distinct projective roots of a binary form with exact multiplicities.
#[derive(Clone, Debug)]
pub struct FactorProfile {
    /// `(root (a : b) meaning the linear factor bY - aZ ... )` — concretely,
    /// the root is the point `(y : z)` on the projective line where the form
    /// vanishes, with `z = 1` except for the root at infinity `(1 : 0)`.
    pub factors: Vec<(Complex64, Complex64, usize)>,
}

impl FactorProfile {
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.factors.iter().map(|&(_, _, m)| m).sum()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.factors.iter().map(|&(_, _, l)| l).collect();
        m.sort_unstable();
        m
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Ext>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[Ext] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Ext {
        self.coeffs.get(i).cloned().unwrap_or_else(Ext::zero)
    }

    pub fn evaluate(&self, y: &Ext, z: &Ext) -> Ext {
        let d = self.degree();
        let mut acc = Ext::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..(d - i) {
                term = term * y.clone();
            }
            for _ in 0..i {
                term = term * z.clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// Dehomogenize at `Z = 1`: the univariate polynomial in `y` whose degree
    /// drop below `d` records the multiplicity of the root at infinity.
    pub fn dehomogenize(&self) -> UniPoly {
        // coeff of y^k is coeffs[d - k]
        let d = self.degree();
        let mut c = vec![Ext::zero(); d + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[d - i] = v.clone();
        }
        UniPoly::new(c)
    }

    /// Order of vanishing of the restriction at the first parameter value:
    /// the number of low-index zero coefficients. For a restriction
    /// `F(s*p + t*q)` this is the intersection multiplicity at `p` of the
    /// curve with the line, provided the line is not contained in the curve.
    /// Viewed as a form in `(Y, Z)`, this is also the exact power of `Z`
    /// dividing the form.
    pub fn order_at_first_point(&self) -> usize {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return i;
            }
        }
        self.coeffs.len()
    }

    /// Rebuild a form of the given degree from its `Z = 1` dehomogenization.
    pub fn from_dehomogenized(p: &UniPoly, degree: usize) -> Self {
        assert!(
            p.deg().unwrap_or(0) <= degree,
            "dehomogenized degree exceeds the form degree"
        );
        let mut coeffs = vec![Ext::zero(); degree + 1];
        for (k, c) in p.coeffs().iter().enumerate() {
            coeffs[degree - k] = c.clone();
        }
        BinaryForm { coeffs }
    }

    pub fn scale(&self, c: &Ext) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Ext::from_int(-1))
    }

    /// Sum of two forms of the same degree.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "degree mismatch in binary sum");
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// Product of two forms; degrees add. Indexing by the power of `Z` makes
    /// this a plain convolution.
    pub fn mul(&self, o: &Self) -> Self {
        let mut coeffs = vec![Ext::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs }
    }

    /// Partial derivative with respect to `Y`.
    pub fn derive_y(&self) -> Self {
        let d = self.degree();
        assert!(d >= 1, "derivative of a constant form");
        let coeffs = (0..d)
            .map(|i| self.coeffs[i].clone() * Ext::from_int((d - i) as i64))
            .collect();
        BinaryForm { coeffs }
    }

    /// Partial derivative with respect to `Z`.
    pub fn derive_z(&self) -> Self {
        let d = self.degree();
        assert!(d >= 1, "derivative of a constant form");
        let coeffs = (0..d)
            .map(|i| self.coeffs[i + 1].clone() * Ext::from_int((i + 1) as i64))
            .collect();
        BinaryForm { coeffs }
    }

    /// Exact gcd of two forms: the common power of `Z` times the (monic) gcd
    /// of the dehomogenizations, rehomogenized to the correct degree.
    pub fn gcd(&self, o: &Self) -> Self {
        assert!(!self.is_zero() && !o.is_zero(), "gcd with the zero form");
        let zc = self.order_at_first_point().min(o.order_at_first_point());
        let g = self.dehomogenize().gcd(&o.dehomogenize());
        let gd = g.deg().unwrap_or(0);
        // rehomogenizing to degree gd + zc appends exactly the Z^zc factor
        BinaryForm::from_dehomogenized(&g, gd + zc)
    }

    /// Exact quotient `self / g`; panics if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Self {
        assert!(!g.is_zero(), "division by the zero form");
        let zf = self.order_at_first_point();
        let zg = g.order_at_first_point();
        assert!(zf >= zg && self.degree() >= g.degree(), "not divisible");
        let (q, r) = self.dehomogenize().div_rem(&g.dehomogenize());
        assert!(r.is_zero(), "not divisible");
        BinaryForm::from_dehomogenized(&q, self.degree() - g.degree())
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() {
                parts.push(format!("({c})"));
            }
            match d - i {
                0 => {}
                1 => parts.push("Y".into()),
                k => parts.push(format!("Y^{k}")),
            }
            match i {
                0 => {}
                1 => parts.push("Z".into()),
                k => parts.push(format!("Z^{k}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Distinct roots on the projective line with exact multiplicities.
pub fn binary_factor_profile(g: &BinaryForm) -> Result<FactorProfile> {
    if g.is_zero() {
        return Err(Error::Degenerate(
            "factor profile of the zero form is undefined".into(),
        ));
    }
    let d = g.degree();
    let p = g.dehomogenize();
    let finite_deg = p.deg().unwrap_or(0);
    let inf_mult = d - finite_deg;

    let mut factors: Vec<(Complex64, Complex64, usize)> = Vec::new();
    if inf_mult > 0 {
        factors.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), inf_mult));
    }
    if finite_deg > 0 {
        for (z, m) in complex_roots(&p, 53)? {
            factors.push((z, Complex64::new(1.0, 0.0), m));
        }
    }
    // distinctness beyond the separation tolerance is guaranteed per
    // squarefree factor; check across factors too
    for i in 0..factors.len() {
        for j in 0..i {
            let (a, b) = (factors[i], factors[j]);
            let da = (a.0 * b.1 - b.0 * a.1).norm();
            if da < SEPARATION_TOL {
                return Err(Error::Numerical(
                    "root collision across squarefree factors".into(),
                ));
            }
        }
    }
    Ok(FactorProfile { factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(ints: &[i64]) -> BinaryForm {
        BinaryForm::new(ints.iter().map(|&n| Ext::from_int(n)).collect())
    }

    #[test]
    fn cube_roots_profile() {
        // Y^3 + Z^3
        let g = bf(&[1, 0, 0, 1]);
        let p = binary_factor_profile(&g).unwrap();
        assert_eq!(p.distinct_count(), 3);
        assert_eq!(p.multiplicities(), vec![1, 1, 1]);
        assert_eq!(p.total_multiplicity(), 3);
    }

    #[test]
    fn squared_factor_profile() {
        // Y^2 (Y + Z) = Y^3 + Y^2 Z
        let g = bf(&[1, 1, 0, 0]);
        let p = binary_factor_profile(&g).unwrap();
        assert_eq!(p.distinct_count(), 2);
        assert_eq!(p.multiplicities(), vec![1, 2]);
    }

    #[test]
    fn pure_power_profile() {
        // Y^3: triple root at (0 : 1)
        let g = bf(&[1, 0, 0, 0]);
        let p = binary_factor_profile(&g).unwrap();
        assert_eq!(p.distinct_count(), 1);
        assert_eq!(p.factors[0].2, 3);
    }

    #[test]
    fn root_at_infinity() {
        // Z^2 (Y + Z): distinct roots (1:0) with mult 2 and (-1:1)
        let g = bf(&[0, 0, 1, 1]);
        let p = binary_factor_profile(&g).unwrap();
        assert_eq!(p.distinct_count(), 2);
        let inf = p.factors.iter().find(|f| f.1.norm() < 1e-12).unwrap();
        assert_eq!(inf.2, 2);
    }

    #[test]
    fn zero_form_rejected() {
        let g = BinaryForm::new(vec![Ext::zero(); 4]);
        assert!(binary_factor_profile(&g).is_err());
    }

    #[test]
    fn euler_identity_for_derivatives() {
        // d*G = Y*G_Y + Z*G_Z for G = Y^3 + 2Y^2Z - Z^3
        let g = bf(&[1, 2, 0, -1]);
        let y = bf(&[1, 0]);
        let z = bf(&[0, 1]);
        let euler = y.mul(&g.derive_y()).add(&z.mul(&g.derive_z()));
        assert_eq!(euler, g.scale(&Ext::from_int(3)));
    }

    #[test]
    fn gcd_and_exact_division() {
        // 3Y^2Z + 2YZ^2 = Y*(3Y + 2Z)*Z and Y^3 share the factor Y
        let a = bf(&[0, 3, 2, 0]);
        let b = bf(&[-1, 0, 0, 0]);
        let g = a.gcd(&b);
        assert_eq!(g, bf(&[1, 0]));
        assert_eq!(a.div_exact(&g), bf(&[0, 3, 2]));
        assert_eq!(b.div_exact(&g), bf(&[-1, 0, 0]));
    }

    #[test]
    fn gcd_tracks_common_z_power() {
        // Y*Z^2 and Z^3 share Z^2
        let a = bf(&[0, 0, 1]).mul(&bf(&[1, 0]));
        let b = bf(&[0, 0, 0, 1]);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), 2);
        assert_eq!(g.order_at_first_point(), 2);
    }

    #[test]
    fn residuals_below_tolerance() {
        let g = bf(&[2, -1, 0, 3]);
        let p = binary_factor_profile(&g).unwrap();
        assert_eq!(p.total_multiplicity(), 3);
        for &(y, z, _) in &p.factors {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, c) in g.coeffs().iter().enumerate() {
                acc += c.to_c64() * y.powi((g.degree() - i) as i32) * z.powi(i as i32);
            }
            assert!(acc.norm() < 1e-9);
        }
    }
}
