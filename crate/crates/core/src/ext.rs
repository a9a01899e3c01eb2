//! Exact scalar arithmetic over Q, optionally extended by one square root.
//!
//! Every exact quantity in the crate is an [`Ext`]: a value `a + b*sqrt(d)`
//! with rational `a`, `b`, `d`. Plain rationals are the case `b = 0`. All
//! values taking part in one computation share the same radicand `d` (or are
//! rational), which is enough for the quadratic points arising from flexes
//! and singular loci of desk-scale curves.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact field element `a + b*sqrt(d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ext {
    a: BigRational,
    b: BigRational,
    d: BigRational,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

impl Ext {
    pub fn new(a: BigRational, b: BigRational, d: BigRational) -> Self {
        if b.is_zero() || d.is_zero() {
            return Ext {
                a,
                b: BigRational::zero(),
                d: BigRational::zero(),
            };
        }
        // Collapse to a rational when the radicand is a perfect square.
        if let Some(r) = rational_sqrt(&d) {
            return Ext {
                a: a + &b * r,
                b: BigRational::zero(),
                d: BigRational::zero(),
            };
        }
        Ext { a, b, d }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Ext {
            a,
            b: BigRational::zero(),
            d: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `sqrt(d)` as an element of Q(sqrt(d)).
    pub fn sqrt_of(d: BigRational) -> Self {
        Ext::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radicand(&self) -> &BigRational {
        &self.d
    }

    /// Coefficient of `sqrt(d)`.
    pub fn quad_part(&self) -> BigRational {
        self.b.clone()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Field conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        Ext {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    fn join_d(&self, other: &Ext) -> BigRational {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!(
                "mixed quadratic fields: sqrt({}) vs sqrt({})",
                self.d, other.d
            );
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        // 1/(a+b*sqrt(d)) = (a-b*sqrt(d)) / (a^2 - b^2 d)
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        assert!(!n.is_zero(), "degenerate quadratic element (norm zero)");
        Ext::new(&self.a / &n, -&self.b / &n, self.d.clone())
    }

    /// Numeric embedding, sending `sqrt(d)` to the principal square root.
    pub fn to_c64(&self) -> Complex64 {
        let a = rat_to_f64(&self.a);
        if self.b.is_zero() {
            return Complex64::new(a, 0.0);
        }
        let b = rat_to_f64(&self.b);
        let d = rat_to_f64(&self.d);
        if d >= 0.0 {
            Complex64::new(a + b * d.sqrt(), 0.0)
        } else {
            Complex64::new(a, b * (-d).sqrt())
        }
    }
}

/// Best rational approximation of `x` by continued fractions, rejected when
/// no denominator up to `max_den` reproduces `x` to within `tol`.
pub fn rationalize_f64(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::from(1));
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let cand = BigRational::new(p1.clone(), q1.clone());
        if (rat_to_f64(&cand) - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(cand);
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if a > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let (p2, q2) = (&ai * &p1 + &p0, &ai * &q1 + &q0);
        if q2 > BigInt::from(max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        frac = inv - a;
    }
    let cand = BigRational::new(p1, q1);
    if (rat_to_f64(&cand) - x).abs() <= tol * (1.0 + x.abs()) {
        Some(cand)
    } else {
        None
    }
}

/// Exact continued-fraction rounding of a (high-precision) rational `x` to
/// the simplest rational within `tol`, denominator bounded by `max_den`.
pub fn rationalize_rat(x: &BigRational, max_den: &BigInt, tol: &BigRational) -> Option<BigRational> {
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let mut a = x.floor().to_integer();
    let (mut p1, mut q1) = (a.clone(), BigInt::from(1));
    let mut rem = x - BigRational::from_integer(a.clone());
    for _ in 0..256 {
        let cand = BigRational::new(p1.clone(), q1.clone());
        if (&cand - x).abs() <= *tol {
            return Some(cand);
        }
        if rem.is_zero() {
            break;
        }
        let inv = rem.recip();
        a = inv.floor().to_integer();
        let (p2, q2) = (&a * &p1 + &p0, &a * &q1 + &q0);
        if &q2 > max_den {
            break;
        }
        rem = inv - BigRational::from_integer(a.clone());
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let cand = BigRational::new(p1, q1);
    if (&cand - x).abs() <= *tol {
        Some(cand)
    } else {
        None
    }
}

/// Rational to f64 conversion that survives huge numerators/denominators.
pub fn rat_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb.max(db) - 900;
    if shift <= 0 {
        return 0.0;
    }
    let n = q.numer() >> shift;
    let d = q.denom() >> shift;
    if d.is_zero() {
        return if q.numer().sign() == Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    BigRational::new(n, d).to_f64().unwrap_or(0.0)
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, o: Ext) -> Ext {
        let d = self.join_d(&o);
        Ext::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, o: Ext) -> Ext {
        let d = self.join_d(&o);
        Ext::new(self.a - o.a, self.b - o.b, d)
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, o: Ext) -> Ext {
        let d = self.join_d(&o);
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ext::new(a, b, d)
    }
}

impl Div for Ext {
    type Output = Ext;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Ext) -> Ext {
        self * o.inv()
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
