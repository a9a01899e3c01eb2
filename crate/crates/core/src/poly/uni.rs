//! Dense univariate polynomials over the exact scalar [`Ext`].

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::Scalar;
use crate::error::{Error, Result};
use crate::ext::Ext;

/// Univariate polynomial, dense, no trailing zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Ext>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Ext>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Ext::one())
    }

    pub fn constant(c: Ext) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: Ext, k: usize) -> Self {
        let mut v = vec![Ext::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn x() -> Self {
        UniPoly::monomial(Ext::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Ext::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial has no degree.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Ext {
        self.coeffs.get(i).cloned().unwrap_or_else(Ext::zero)
    }

    pub fn coeffs(&self) -> &[Ext] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Ext> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + o.coeff(i));
        }
        UniPoly::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - o.coeff(i));
        }
        UniPoly::new(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Ext::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &Ext) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Ext::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Ext::from_int((i + 1) as i64) * c.clone())
                .collect(),
        )
    }

    /// `p(x + a)` by Horner composition.
    pub fn taylor_shift(&self, a: &Ext) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (x + a) + c
            acc = acc
                .shift_up(1)
                .add(&acc.scale(a))
                .add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    pub fn evaluate(&self, x: &Ext) -> Ext {
        let mut acc = Ext::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Horner evaluation after numeric embedding.
    pub fn evaluate_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_c64();
        }
        acc
    }

    pub fn to_scalars<S: Scalar>(&self, prec: u32) -> Vec<S> {
        self.coeffs.iter().map(|c| S::from_ext(c, prec)).collect()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Euclidean division; panics only on division by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.deg().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.clone();
        let mut quo = vec![Ext::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.deg() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().clone() * lead_inv.clone();
            let k = rd - dd;
            quo[k] = c.clone();
            rem = rem.sub(&d.scale(&c).shift_up(k));
        }
        (UniPoly::new(quo), rem)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd over the coefficient field.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic(); // normalize to tame coefficient growth
        }
        a.monic()
    }

    /// Squarefree part (product of distinct irreducible factors).
    pub fn squarefree_part(&self) -> Self {
        match self.deg() {
            None | Some(0) => self.monic(),
            Some(_) => {
                let g = self.gcd(&self.derivative());
                self.div_rem(&g).0.monic()
            }
        }
    }

    /// Squarefree decomposition by Yun's algorithm: pairs `(factor, mult)`
    /// with pairwise coprime squarefree factors, product of `factor^mult`
    /// equal to the monic normalization of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let f = self.monic();
        if f.deg().map_or(true, |d| d == 0) {
            return vec![];
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut d = fp.div_rem(&a).0.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.deg().map_or(false, |k| k > 0) {
            let p = b.gcd(&d);
            if p.deg().map_or(false, |k| k > 0) {
                out.push((p.clone(), i));
            }
            b = b.div_rem(&p).0;
            let c = d.div_rem(&p).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Resultant with the orientation `res(f, g) = lc(f)^n lc(g)^m prod(beta_j - alpha_i)`
    /// over the roots `alpha` of `f` and `beta` of `g`.
    pub fn resultant(&self, o: &Self) -> Result<Ext> {
        let m = self
            .deg()
            .ok_or_else(|| Error::Degenerate("resultant of zero polynomial".into()))?;
        let n = o
            .deg()
            .ok_or_else(|| Error::Degenerate("resultant of zero polynomial".into()))?;
        if m == 0 {
            return Ok(pow_ext(self.coeff(0), n));
        }
        if n == 0 {
            return Ok(pow_ext(o.coeff(0), m));
        }
        let det = sylvester_det(self, o);
        // standard Sylvester determinant is lc(f)^n prod g(alpha_i); flip
        // the sign to match the stated orientation
        if (m * n) % 2 == 1 {
            Ok(-det)
        } else {
            Ok(det)
        }
    }

    /// Discriminant: `(-1)^{m(m-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<Ext> {
        let m = self
            .deg()
            .ok_or_else(|| Error::Degenerate("discriminant of zero polynomial".into()))?;
        if m == 0 {
            return Err(Error::Degenerate("discriminant of a constant".into()));
        }
        if m == 1 {
            return Ok(Ext::one());
        }
        let fp = self.derivative();
        if fp.is_zero() {
            return Ok(Ext::zero());
        }
        let r = sylvester_det(self, &fp);
        let sign = if (m * (m - 1) / 2) % 2 == 1 { -1 } else { 1 };
        Ok(Ext::from_int(sign) * r / self.leading().unwrap().clone())
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(Ext, Ext)]) -> Self {
        // Newton's divided differences
        let n = points.len();
        let mut coef: Vec<Ext> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let dx = points[i].0.clone() - points[i - j].0.clone();
                coef[i] = (coef[i].clone() - coef[i - 1].clone()) / dx;
            }
        }
        let mut p = UniPoly::zero();
        for i in (0..n).rev() {
            let lin = UniPoly::new(vec![-points[i].0.clone(), Ext::one()]);
            p = p.mul(&lin).add(&UniPoly::constant(coef[i].clone()));
        }
        p
    }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    /// Clear denominators and content for a rational-coefficient polynomial,
    /// with a positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() || !self.is_rational() {
            return self.clone();
        }
        let rats: Vec<&BigRational> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().unwrap())
            .collect();
        let mut den = num_bigint::BigInt::one();
        for r in &rats {
            den = num_integer::lcm(den, r.denom().clone());
        }
        let ints: Vec<num_bigint::BigInt> = rats
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        let mut g = num_bigint::BigInt::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        if g.is_zero() {
            g = num_bigint::BigInt::one();
        }
        if ints.last().map(|v| v.is_negative()).unwrap_or(false) {
            g = -g;
        }
        UniPoly::new(
            ints.into_iter()
                .map(|v| Ext::from_rational(BigRational::from_integer(v / &g)))
                .collect(),
        )
    }
}

fn pow_ext(base: Ext, mut e: usize) -> Ext {
    let mut acc = Ext::one();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    acc
}

/// Determinant of the Sylvester matrix of `f`, `g` by fraction-free-style
/// Gaussian elimination over the coefficient field.
fn sylvester_det(f: &UniPoly, g: &UniPoly) -> Ext {
    let m = f.deg().unwrap();
    let n = g.deg().unwrap();
    let size = m + n;
    let mut mat = vec![vec![Ext::zero(); size]; size];
    for r in 0..n {
        for i in 0..=m {
            mat[r][r + i] = f.coeff(m - i);
        }
    }
    for r in 0..m {
        for i in 0..=n {
            mat[n + r][r + i] = g.coeff(n - i);
        }
    }
    det_in_place(mat)
}

pub(crate) fn det_in_place(mut mat: Vec<Vec<Ext>>) -> Ext {
    let size = mat.len();
    let mut det = Ext::one();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !mat[r][col].is_zero());
        let pr = match pivot {
            None => return Ext::zero(),
            Some(p) => p,
        };
        if pr != col {
            mat.swap(pr, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det = det * p.clone();
        let pinv = p.inv();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() * pinv.clone();
            for c in col..size {
                let sub = factor.clone() * mat[col][c].clone();
                mat[r][c] = mat[r][c].clone() - sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_distinct_linear() {
        // res(x-1, x-2) = 2 - 1 = 1 under the chosen orientation
        let f = UniPoly::from_ints(&[-1, 1]);
        let g = UniPoly::from_ints(&[-2, 1]);
        assert_eq!(f.resultant(&g).unwrap(), Ext::from_int(1));
    }

    #[test]
    fn resultant_shared_root() {
        let f = UniPoly::from_ints(&[-1, 0, 1]); // x^2-1
        let g = UniPoly::from_ints(&[-1, 1]); // x-1
        assert!(f.resultant(&g).unwrap().is_zero());
    }

    #[test]
    fn resultant_equal_polynomials() {
        let f = UniPoly::from_ints(&[1, 0, 1]); // x^2+1
        assert!(f.resultant(&f).unwrap().is_zero());
    }

    #[test]
    fn resultant_rejects_zero() {
        assert!(UniPoly::zero().resultant(&UniPoly::x()).is_err());
    }

    #[test]
    fn discriminant_quadratic() {
        // x^2 + bx + c -> b^2 - 4c, with b=3, c=1: 5
        let f = UniPoly::from_ints(&[1, 3, 1]);
        assert_eq!(f.discriminant().unwrap(), Ext::from_int(5));
    }

    #[test]
    fn discriminant_depressed_cubic() {
        // x^3 + px + q -> -4p^3 - 27q^2, with p=2, q=1: -59
        let f = UniPoly::from_ints(&[1, 2, 0, 1]);
        assert_eq!(f.discriminant().unwrap(), Ext::from_int(-59));
    }

    #[test]
    fn discriminant_repeated_root() {
        // (x-1)^2
        let f = UniPoly::from_ints(&[1, -2, 1]);
        assert!(f.discriminant().unwrap().is_zero());
    }

    #[test]
    fn discriminant_constant_rejected() {
        assert!(UniPoly::one().discriminant().is_err());
    }

    #[test]
    fn squarefree_decomposition_cube_times_linear() {
        // x^3 (x+1)^2
        let x = UniPoly::x();
        let f = x.mul(&x).mul(&x).mul(&UniPoly::from_ints(&[1, 1])).mul(&UniPoly::from_ints(&[1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        let mut rec = UniPoly::one();
        for (p, m) in &dec {
            for _ in 0..*m {
                rec = rec.mul(p);
            }
        }
        assert_eq!(rec, f.monic());
    }

    #[test]
    fn gcd_basic() {
        let f = UniPoly::from_ints(&[-1, 0, 1]); // (x-1)(x+1)
        let g = UniPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(f.gcd(&g), UniPoly::from_ints(&[1, 1]).monic());
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = UniPoly::from_ints(&[3, -2, 0, 5]);
        let pts: Vec<(Ext, Ext)> = (0..5)
            .map(|k| {
                let x = Ext::from_int(k);
                (x.clone(), f.evaluate(&x))
            })
            .collect();
        assert_eq!(UniPoly::interpolate(&pts), f);
    }

    #[test]
    fn resultant_gcd_link() {
        // res = 0 iff nonconstant gcd, over a few exact cases
        let a = UniPoly::from_ints(&[2, 1]);
        let b = UniPoly::from_ints(&[-5, 3, 1]);
        let f = a.mul(&b);
        assert!(f.resultant(&a).unwrap().is_zero());
        let coprime = UniPoly::from_ints(&[1, 1]);
        assert!(!f.resultant(&coprime).unwrap().is_zero());
    }
}
