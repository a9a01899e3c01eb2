//! Bivariate polynomials `f(x, y)` over exact scalars, stored as
//! coefficients of powers of `x` that are univariate polynomials in `y`.
//!
//! Resultants and discriminants with respect to `x` are computed by exact
//! evaluation at rational sample points followed by interpolation, which
//! keeps every intermediate value a plain field element.

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::poly::uni::UniPoly;

/// `f(x, y) = Σ cx[i](y) · x^i`, trailing zero coefficients trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly {
    cx: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut cx: Vec<UniPoly>) -> Self {
        while cx.last().map(|c| c.is_zero()).unwrap_or(false) {
            cx.pop();
        }
        BiPoly { cx }
    }

    pub fn is_zero(&self) -> bool {
        self.cx.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        if self.cx.is_empty() {
            None
        } else {
            Some(self.cx.len() - 1)
        }
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.cx.iter().filter_map(|c| c.deg()).max()
    }

    pub fn coeffs_x(&self) -> &[UniPoly] {
        &self.cx
    }

    /// Leading coefficient in `x`, a polynomial in `y`.
    pub fn lc_x(&self) -> UniPoly {
        self.cx.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    /// Substitute a value for `y`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y: &Ext) -> UniPoly {
        UniPoly::new(self.cx.iter().map(|c| c.evaluate(y)).collect())
    }

    /// Substitute a value for `x`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x: &Ext) -> UniPoly {
        let mut acc = UniPoly::zero();
        let mut p = Ext::one();
        for c in &self.cx {
            acc = acc.add(&c.scale(&p));
            p = p * x.clone();
        }
        acc
    }

    pub fn derivative_x(&self) -> BiPoly {
        if self.cx.len() <= 1 {
            return BiPoly::new(vec![]);
        }
        BiPoly::new(
            self.cx[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&Ext::from_int(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: &Ext, y: &Ext) -> Ext {
        self.eval_y(y).evaluate(x)
    }

    /// Remainder of division by `d` in `x`; requires the divisor's leading
    /// `x`-coefficient to be a nonzero constant so no denominators in `y`
    /// appear.
    pub fn rem_x(&self, d: &BiPoly) -> BiPoly {
        let dd = d.deg_x().expect("nonzero divisor");
        let lc = d.cx[dd].coeff(0);
        assert!(
            d.cx[dd].deg() == Some(0) && !lc.is_zero(),
            "divisor must have a constant leading x-coefficient"
        );
        let lc_inv = lc.inv();
        let mut r = self.cx.clone();
        loop {
            while r.last().map(|c| c.is_zero()).unwrap_or(false) {
                r.pop();
            }
            if r.len() <= dd + 1 {
                if r.len() == dd + 1 {
                    // exact-degree case: one final reduction step
                    let q = r[dd].scale(&lc_inv);
                    for i in 0..=dd {
                        let t = d.cx[i].mul(&q);
                        r[i] = r[i].sub(&t);
                    }
                }
                break;
            }
            let k = r.len() - 1;
            let q = r[k].scale(&lc_inv);
            for i in 0..=dd {
                let t = d.cx[i].mul(&q);
                r[k - dd + i] = r[k - dd + i].sub(&t);
            }
        }
        BiPoly::new(r)
    }
}

/// `res_x(f, g)` as a polynomial in `y`, by evaluation–interpolation.
pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    let (df, dg) = match (f.deg_x(), g.deg_x()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Degenerate("resultant of the zero polynomial".into())),
    };
    if df == 0 && dg == 0 {
        return Ok(UniPoly::one());
    }
    if df == 0 {
        // res(c(y), g) = c(y)^deg g
        return Ok(poly_pow(&f.cx[0], dg));
    }
    if dg == 0 {
        return Ok(poly_pow(&g.cx[0], df));
    }

    let bound = df * g.deg_y().unwrap_or(0) + dg * f.deg_y().unwrap_or(0);
    let lf = f.lc_x();
    let lg = g.lc_x();
    let mut xs: Vec<(Ext, Ext)> = Vec::with_capacity(bound + 1);
    let mut s: i64 = 0;
    while xs.len() <= bound {
        let node = Ext::from_int(s);
        // alternate 0, 1, -1, 2, -2, ...
        s = if s > 0 { -s } else { -s + 1 };
        if lf.evaluate(&node).is_zero() || lg.evaluate(&node).is_zero() {
            continue;
        }
        let fv = f.eval_y(&node);
        let gv = g.eval_y(&node);
        let r = UniPoly::resultant(&fv, &gv)?;
        xs.push((node, r));
    }
    Ok(UniPoly::interpolate(&xs))
}

/// `disc_x(f)` as a polynomial in `y`: vanishes exactly at the `y` values
/// where `f(·, y)` has a repeated root (assuming the leading coefficient
/// does not vanish there).
pub fn discriminant_x(f: &BiPoly) -> Result<UniPoly> {
    let df = f
        .deg_x()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Degenerate("discriminant needs degree >= 1 in x".into()))?;
    if df == 1 {
        return Ok(UniPoly::one());
    }
    let dy = f.deg_y().unwrap_or(0);
    let bound = (2 * df - 1) * dy;
    let lf = f.lc_x();
    let mut xs: Vec<(Ext, Ext)> = Vec::with_capacity(bound + 1);
    let mut s: i64 = 0;
    while xs.len() <= bound {
        let node = Ext::from_int(s);
        s = if s > 0 { -s } else { -s + 1 };
        if lf.evaluate(&node).is_zero() {
            continue;
        }
        let fv = f.eval_y(&node);
        let d = UniPoly::discriminant(&fv)?;
        xs.push((node, d));
    }
    Ok(UniPoly::interpolate(&xs))
}

fn poly_pow(p: &UniPoly, n: usize) -> UniPoly {
    let mut out = UniPoly::one();
    for _ in 0..n {
        out = out.mul(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(ints: &[i64]) -> UniPoly {
        UniPoly::from_ints(ints)
    }

    #[test]
    fn resultant_eliminates_shared_locus() {
        // f = x^2 - y, g = x - y: res_x = y^2 - y, roots y = 0, 1 where the
        // curves meet (at x = 0 and x = 1)
        let f = BiPoly::new(vec![up(&[0, -1]), up(&[0]), up(&[1])]);
        let g = BiPoly::new(vec![up(&[0, -1]), up(&[1])]);
        let r = resultant_x(&f, &g).unwrap();
        assert_eq!(r, up(&[0, -1, 1]));
    }

    #[test]
    fn resultant_against_constant() {
        // res_x(2, g) = 2^deg g
        let c = BiPoly::new(vec![up(&[2])]);
        let g = BiPoly::new(vec![up(&[1]), up(&[0]), up(&[1])]);
        assert_eq!(resultant_x(&c, &g).unwrap(), up(&[4]));
    }

    #[test]
    fn discriminant_of_family() {
        // f = x^2 - y: disc_x = 4y (double root exactly at y = 0)
        let f = BiPoly::new(vec![up(&[0, -1]), up(&[0]), up(&[1])]);
        let d = discriminant_x(&f).unwrap();
        assert_eq!(d, up(&[0, 4]));
    }

    #[test]
    fn discriminant_of_fermat_fiber() {
        // x^3 + t^3 + 1: disc = -27 (t^3+1)^2
        let f = BiPoly::new(vec![up(&[1, 0, 0, 1]), up(&[0]), up(&[0]), up(&[1])]);
        let d = discriminant_x(&f).unwrap();
        let expect = up(&[1, 0, 0, 1]).mul(&up(&[1, 0, 0, 1])).scale(&Ext::from_int(-27));
        assert_eq!(d, expect);
    }

    #[test]
    fn eval_axes_consistent() {
        let f = BiPoly::new(vec![up(&[1, 2]), up(&[3]), up(&[0, 0, 5])]);
        let x = Ext::from_int(2);
        let y = Ext::from_int(-3);
        assert_eq!(f.eval_y(&y).evaluate(&x), f.eval_x(&x).evaluate(&y));
    }
}
