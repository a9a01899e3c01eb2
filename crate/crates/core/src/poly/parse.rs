//! Text format for homogeneous polynomials and projective points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::poly::hom::HomPoly;

/// A possibly-inhomogeneous polynomial built while parsing; exponent triple
/// maps to a rational coefficient.
type Terms = BTreeMap<(u32, u32, u32), BigRational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = if self.peek() == Some(b'-') {
            self.bump();
            neg(self.term()?)
        } else {
            if self.peek() == Some(b'+') {
                self.bump();
            }
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = add(acc, self.term()?);
                }
                b'-' => {
                    self.bump();
                    acc = add(acc, neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = mul(&acc, &self.factor()?);
                }
                Some(b'/') => {
                    self.bump();
                    let pos = self.pos;
                    let rhs = self.factor()?;
                    let c = constant_of(&rhs)
                        .ok_or_else(|| err(pos, "division only by a nonzero constant"))?;
                    if c.is_zero() {
                        return Err(err(pos, "division by zero"));
                    }
                    acc = scale(acc, &(BigRational::one() / c));
                }
                // implicit multiplication: `2X`, `X(Y+Z)`, `(Y+Z)Z`
                Some(c) if c == b'(' || is_var(c) || c.is_ascii_digit() => {
                    acc = mul(&acc, &self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.bump();
            let pos = self.pos;
            let n = self.integer()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| err(pos, "exponent must be a small non-negative integer"))?;
            base = pow(&base, n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(b'-') => {
                self.bump();
                Ok(neg(self.atom()?))
            }
            Some(c) if is_var(c) => {
                self.bump();
                let v = var_index(c);
                let mut e = (0u32, 0u32, 0u32);
                match v {
                    0 => e.0 = 1,
                    1 => e.1 = 1,
                    _ => e.2 = 1,
                }
                let mut t = Terms::new();
                t.insert(e, BigRational::one());
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut t = Terms::new();
                t.insert((0, 0, 0), BigRational::from_integer(BigInt::from(n)));
                Ok(t)
            }
            Some(c) => Err(err(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err(start, "number out of range"))
    }
}

fn is_var(c: u8) -> bool {
    matches!(c.to_ascii_uppercase(), b'X' | b'Y' | b'Z' | b'U' | b'V' | b'W')
}

fn var_index(c: u8) -> usize {
    match c.to_ascii_uppercase() {
        b'X' | b'U' => 0,
        b'Y' | b'V' => 1,
        _ => 2,
    }
}

fn add(mut a: Terms, b: Terms) -> Terms {
    for (e, c) in b {
        let v = a.entry(e).or_insert_with(BigRational::zero);
        *v += c;
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn neg(a: Terms) -> Terms {
    a.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn scale(a: Terms, s: &BigRational) -> Terms {
    a.into_iter().map(|(e, c)| (e, c * s)).collect()
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = (e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2);
            let v = out.entry(e).or_insert_with(BigRational::zero);
            *v += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn pow(a: &Terms, n: u32) -> Terms {
    let mut out = Terms::new();
    out.insert((0, 0, 0), BigRational::one());
    for _ in 0..n {
        out = mul(&out, a);
    }
    out
}

fn constant_of(t: &Terms) -> Option<BigRational> {
    if t.is_empty() {
        return Some(BigRational::zero());
    }
    if t.len() == 1 {
        if let Some(c) = t.get(&(0, 0, 0)) {
            return Some(c.clone());
        }
    }
    None
}

/// Parse an expression in `X, Y, Z` (the dual-plane letters `U, V, W` are
/// accepted as aliases) into a homogeneous polynomial. Non-homogeneous input
/// is rejected with the offending monomials listed.
pub fn parse_hompoly(src: &str) -> Result<HomPoly> {
    let mut p = Parser::new(src);
    let terms = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos, "trailing input"));
    }
    if terms.is_empty() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    HomPoly::from_terms(
        terms
            .into_iter()
            .map(|(e, c)| (e, Ext::from_rational(c))),
        0,
    )
}

/// Parse a projective point `"a:b:c"` with integer or rational entries.
pub fn parse_point(src: &str) -> Result<[Ext; 3]> {
    let parts: Vec<&str> = src.trim().trim_matches(|c| c == '(' || c == ')').split(':').collect();
    if parts.len() != 3 {
        return Err(err(0, "point must have three ':'-separated coordinates"));
    }
    let mut out = [Ext::zero(), Ext::zero(), Ext::zero()];
    for (i, part) in parts.iter().enumerate() {
        let part = part.trim();
        let (neg_sign, body) = match part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, part.strip_prefix('+').unwrap_or(part)),
        };
        let q = if let Some((n, d)) = body.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err(0, "bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| err(0, "bad denominator"))?;
            if d.is_zero() {
                return Err(err(0, "zero denominator"));
            }
            BigRational::new(n, d)
        } else {
            let n: BigInt = body
                .trim()
                .parse()
                .map_err(|_| err(0, format!("bad coordinate '{part}'")))?;
            BigRational::from_integer(n)
        };
        out[i] = Ext::from_rational(if neg_sign { -q } else { q });
    }
    if out.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("point (0:0:0) is not projective".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_parses() {
        let f = parse_hompoly("X^3 + Y^3 + Z^3").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff((3, 0, 0)), Ext::one());
    }

    #[test]
    fn nodal_cubic_with_parens() {
        let f = parse_hompoly("X^2*Z + Y^2*(Y+Z)").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff((0, 3, 0)), Ext::one());
        assert_eq!(f.coeff((0, 2, 1)), Ext::one());
    }

    #[test]
    fn implicit_multiplication_and_signs() {
        let f = parse_hompoly("2X^2Z - 3Y^3").unwrap();
        assert_eq!(f.coeff((2, 0, 1)), Ext::from_int(2));
        assert_eq!(f.coeff((0, 3, 0)), Ext::from_int(-3));
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_hompoly("X^2/2 - 1/3*Y^2").unwrap();
        assert_eq!(f.coeff((2, 0, 0)), Ext::from_frac(1, 2));
        assert_eq!(f.coeff((0, 2, 0)), Ext::from_frac(-1, 3));
    }

    #[test]
    fn dual_letters_alias() {
        let f = parse_hompoly("U^3 - V*W^2").unwrap();
        assert_eq!(f.coeff((3, 0, 0)), Ext::one());
        assert_eq!(f.coeff((0, 1, 2)), Ext::from_int(-1));
    }

    #[test]
    fn inhomogeneous_rejected_with_monomials() {
        let e = parse_hompoly("X^3 + Y^2").unwrap_err();
        match e {
            Error::NotHomogeneous { monomials } => assert!(monomials.contains("X^3")),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn parse_error_has_position() {
        let e = parse_hompoly("X^3 + $").unwrap_err();
        match e {
            Error::Parse { pos, .. } => assert_eq!(pos, 6),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn display_roundtrip() {
        for src in [
            "X^3 + Y^3 + Z^3",
            "X^2*Z + Y^3 + Y^2*Z",
            "X^3 - Y*Z^2",
            "X^3*Z - Y^4",
            "2*X^2*Y^2 - X*Y*Z^2 + 5*Z^4",
        ] {
            let f = parse_hompoly(src).unwrap();
            let round = parse_hompoly(&format!("{f}")).unwrap();
            assert_eq!(f, round, "roundtrip failed for {src}");
        }
    }

    #[test]
    fn point_parsing() {
        let p = parse_point("1:0:-1").unwrap();
        assert_eq!(p[0], Ext::one());
        assert_eq!(p[2], Ext::from_int(-1));
        let q = parse_point("(2/3 : -1 : 0)").unwrap();
        assert_eq!(q[0], Ext::from_frac(2, 3));
        assert!(parse_point("0:0:0").is_err());
        assert!(parse_point("1:2").is_err());
    }
}
