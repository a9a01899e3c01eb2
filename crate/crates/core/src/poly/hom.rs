//! Homogeneous polynomials in three variables over exact scalars.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::linalg::Mat3;
use crate::poly::binary::BinaryForm;
use crate::poly::uni::UniPoly;

/// A homogeneous polynomial in `X`, `Y`, `Z`. Keys are exponent triples
/// `(i, j, k)` with `i + j + k = degree`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly {
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), Ext>,
}

impl HomPoly {
    /// Build from a term list; all exponent triples must have equal total
    /// degree. For an empty or all-zero list the polynomial is zero with the
    /// given fallback degree.
    pub fn from_terms(
        terms: impl IntoIterator<Item = ((u32, u32, u32), Ext)>,
        fallback_degree: u32,
    ) -> Result<Self> {
        let mut map: BTreeMap<(u32, u32, u32), Ext> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Ext::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees: Vec<u32> = map.keys().map(|&(i, j, k)| i + j + k).collect();
        degrees.sort_unstable();
        degrees.dedup();
        match degrees.len() {
            0 => Ok(HomPoly {
                degree: fallback_degree,
                terms: map,
            }),
            1 => Ok(HomPoly {
                degree: degrees[0],
                terms: map,
            }),
            _ => {
                let min = degrees[0];
                let offending: Vec<String> = map
                    .keys()
                    .filter(|&&(i, j, k)| i + j + k != min)
                    .map(|&e| monomial_string(e))
                    .collect();
                Err(Error::NotHomogeneous {
                    monomials: offending.join(", "),
                })
            }
        }
    }

    pub fn zero(degree: u32) -> Self {
        HomPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(e: (u32, u32, u32), c: Ext) -> Self {
        let degree = e.0 + e.1 + e.2;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        HomPoly { degree, terms }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Ext)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> Ext {
        self.terms.get(&e).cloned().unwrap_or_else(Ext::zero)
    }

    pub fn add(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Ext::zero);
            *entry = entry.clone() + c.clone();
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly {
            degree: self.degree,
            terms,
        }
    }

    pub fn sub(&self, other: &HomPoly) -> HomPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Ext) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.degree);
        }
        HomPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, co)| (*e, co.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut terms: BTreeMap<(u32, u32, u32), Ext> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = (e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2);
                let entry = terms.entry(e).or_insert_with(Ext::zero);
                *entry = entry.clone() + c1.clone() * c2.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly {
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> HomPoly {
        let mut out = HomPoly::monomial((0, 0, 0), Ext::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable 0 = X, 1 = Y, 2 = Z.
    pub fn derive(&self, var: usize) -> HomPoly {
        assert!(var < 3);
        let mut terms = BTreeMap::new();
        for (&(i, j, k), c) in &self.terms {
            let (n, e) = match var {
                0 => (i, (i.wrapping_sub(1), j, k)),
                1 => (j, (i, j.wrapping_sub(1), k)),
                _ => (k, (i, j, k.wrapping_sub(1))),
            };
            if n > 0 {
                terms.insert(e, c.clone() * Ext::from_int(n as i64));
            }
        }
        HomPoly {
            degree: self.degree.saturating_sub(1),
            terms,
        }
    }

    pub fn gradient(&self) -> [HomPoly; 3] {
        [self.derive(0), self.derive(1), self.derive(2)]
    }

    pub fn evaluate(&self, p: &[Ext; 3]) -> Ext {
        let mut acc = Ext::zero();
        for (&(i, j, k), c) in &self.terms {
            acc = acc + c.clone() * pow_e(&p[0], i) * pow_e(&p[1], j) * pow_e(&p[2], k);
        }
        acc
    }

    pub fn evaluate_c64(&self, p: &[Complex64; 3]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j, k), c) in &self.terms {
            acc += c.to_c64() * p[0].powi(i as i32) * p[1].powi(j as i32) * p[2].powi(k as i32);
        }
        acc
    }

    /// Evaluate at a numeric point of any precision tier.
    pub fn evaluate_scalar<S: crate::bigfloat::Scalar>(&self, p: &[S; 3], prec: u32) -> S {
        let mut acc = S::from_c64(Complex64::new(0.0, 0.0), prec);
        for (&(i, j, k), c) in &self.terms {
            let mut term = S::from_ext(c, prec);
            for _ in 0..i {
                term = term.mul(&p[0]);
            }
            for _ in 0..j {
                term = term.mul(&p[1]);
            }
            for _ in 0..k {
                term = term.mul(&p[2]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute three forms of a common degree `e` for the variables:
    /// `F(g0, g1, g2)`, homogeneous of degree `deg(F) * e`.
    pub fn compose(&self, g: &[HomPoly; 3]) -> HomPoly {
        let e = g[0].degree();
        assert!(g.iter().all(|gi| gi.degree() == e), "degree mismatch");
        let mut out = HomPoly::zero(self.degree * e);
        for (&(i, j, k), c) in &self.terms {
            let term = g[0].pow(i).mul(&g[1].pow(j)).mul(&g[2].pow(k)).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// `F(A·p)`: pull back along the linear change of coordinates `A`.
    pub fn transform(&self, a: &Mat3) -> HomPoly {
        let rows: Vec<HomPoly> = (0..3)
            .map(|r| {
                HomPoly::from_terms(
                    [
                        ((1, 0, 0), a.at(r, 0).clone()),
                        ((0, 1, 0), a.at(r, 1).clone()),
                        ((0, 0, 1), a.at(r, 2).clone()),
                    ],
                    1,
                )
                .expect("linear form")
            })
            .collect();
        let mut out = HomPoly::zero(self.degree);
        for (&(i, j, k), c) in &self.terms {
            let term = rows[0]
                .pow(i)
                .mul(&rows[1].pow(j))
                .mul(&rows[2].pow(k))
                .scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Restriction to the line through `p` and `q`: the binary form
    /// `(s, t) -> F(s·p + t·q)`.
    pub fn restrict_to_line(&self, p: &[Ext; 3], q: &[Ext; 3]) -> BinaryForm {
        // each variable becomes the binary linear form p_v * s + q_v * t
        let lin: Vec<Vec<Ext>> = (0..3).map(|v| vec![p[v].clone(), q[v].clone()]).collect();
        let mut acc = vec![Ext::zero(); self.degree as usize + 1];
        for (&(i, j, k), c) in &self.terms {
            let mut term = vec![c.clone()];
            for &(v, e) in [(0usize, i), (1, j), (2, k)].iter() {
                for _ in 0..e {
                    term = conv(&term, &lin[v]);
                }
            }
            for (n, t) in term.into_iter().enumerate() {
                acc[n] = acc[n].clone() + t;
            }
        }
        BinaryForm::new(acc)
    }

    /// Dehomogenize by setting variable `chart` to 1. The remaining two
    /// variables, in `(X, Y, Z)` order, become `(x, y)`: coefficients of
    /// `x^i` are returned as polynomials in `y`.
    pub fn dehomogenize(&self, chart: usize) -> Vec<UniPoly> {
        assert!(chart < 3);
        let (vx, vy) = match chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut cols: Vec<Vec<Ext>> = Vec::new();
        for (&e, c) in &self.terms {
            let exps = [e.0 as usize, e.1 as usize, e.2 as usize];
            let (i, j) = (exps[vx], exps[vy]);
            if cols.len() <= i {
                cols.resize(i + 1, Vec::new());
            }
            if cols[i].len() <= j {
                cols[i].resize(j + 1, Ext::zero());
            }
            cols[i][j] = cols[i][j].clone() + c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    /// Treat as a univariate polynomial in variable `var`, with the other two
    /// variables specialized to exact values. Returns coefficients of the
    /// powers of `var`.
    pub fn specialize(&self, var: usize, vals: [&Ext; 2]) -> UniPoly {
        assert!(var < 3);
        let others: [usize; 2] = match var {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let mut coeffs = vec![Ext::zero(); self.degree as usize + 1];
        for (&e, c) in &self.terms {
            let exps = [e.0, e.1, e.2];
            let n = exps[var] as usize;
            let v = c.clone()
                * pow_e(vals[0], exps[others[0]])
                * pow_e(vals[1], exps[others[1]]);
            coeffs[n] = coeffs[n].clone() + v;
        }
        UniPoly::new(coeffs)
    }

    /// Divide out the content so integer coefficients are coprime with a
    /// positive leading term (first in lexicographic order). Rational-only
    /// polynomials required.
    pub fn content_normalized(&self) -> HomPoly {
        if self.terms.is_empty() {
            return self.clone();
        }
        if self.terms.values().any(|c| !c.is_rational()) {
            // quadratic coefficients: just normalize by the first one
            let first = self.terms.values().next().unwrap().clone();
            return self.scale(&first.inv());
        }
        let mut denom_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            let q = c.as_rational().unwrap();
            denom_lcm = num_integer::lcm(denom_lcm, q.denom().clone());
        }
        let mut numer_gcd = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            let q = c.as_rational().unwrap() * BigRational::from_integer(denom_lcm.clone());
            numer_gcd = num_integer::gcd(numer_gcd, q.numer().clone());
        }
        let mut scale = BigRational::new(denom_lcm, numer_gcd);
        let first = self.terms.values().next().unwrap().as_rational().unwrap();
        if (first * &scale).is_negative() {
            scale = -scale;
        }
        self.scale(&Ext::from_rational(scale))
    }

    /// Whether all coefficients are plain rationals.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// The Hessian determinant `det(∂²F/∂v∂w)`, a homogeneous polynomial of
    /// degree `3(d-2)`.
    pub fn hessian_det(&self) -> HomPoly {
        let mut h = [[HomPoly::zero(0), HomPoly::zero(0), HomPoly::zero(0)],
                     [HomPoly::zero(0), HomPoly::zero(0), HomPoly::zero(0)],
                     [HomPoly::zero(0), HomPoly::zero(0), HomPoly::zero(0)]];
        for (v, row) in h.iter_mut().enumerate() {
            let dv = self.derive(v);
            for (w, cell) in row.iter_mut().enumerate() {
                *cell = dv.derive(w);
            }
        }
        let det3 = |a: &HomPoly, b: &HomPoly, c: &HomPoly, d: &HomPoly| a.mul(b).sub(&c.mul(d));
        let m0 = det3(&h[1][1], &h[2][2], &h[1][2], &h[2][1]);
        let m1 = det3(&h[1][0], &h[2][2], &h[1][2], &h[2][0]);
        let m2 = det3(&h[1][0], &h[2][1], &h[1][1], &h[2][0]);
        h[0][0]
            .mul(&m0)
            .sub(&h[0][1].mul(&m1))
            .add(&h[0][2].mul(&m2))
    }
}

fn pow_e(x: &Ext, n: u32) -> Ext {
    let mut out = Ext::one();
    for _ in 0..n {
        out = out * x.clone();
    }
    out
}

fn conv(a: &[Ext], b: &[Ext]) -> Vec<Ext> {
    let mut out = vec![Ext::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn monomial_string(e: (u32, u32, u32)) -> String {
    let mut parts = Vec::new();
    for (name, n) in [("X", e.0), ("Y", e.1), ("Z", e.2)] {
        match n {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{n}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest X-power first reads most naturally
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let mono = monomial_string(e);
            let (sign, mag) = if let Some(q) = c.as_rational() {
                if q.is_negative() {
                    ("-", Ext::from_rational(-q.clone()))
                } else {
                    ("+", c.clone())
                }
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_is_one = mag.is_one();
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if coeff_is_one {
                write!(f, "{mono}")?;
            } else if mag.is_rational() {
                write!(f, "{mag}*{mono}")?;
            } else {
                write!(f, "({mag})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
