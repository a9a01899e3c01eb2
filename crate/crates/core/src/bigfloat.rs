//! Software binary floating point for the precision ladder.
//!
//! The numeric pipeline (root isolation, path tracking) is generic over a
//! [`Scalar`]; the default instantiation is `Complex64` (53-bit) and the
//! escalation tiers use [`MpComplex`] at 212 or 848 bits.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ext::{rat_to_f64, Ext};

/// Arbitrary precision binary float: `mantissa * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpFloat {
    m: BigInt,
    e: i64,
}

impl MpFloat {
    pub fn zero() -> Self {
        MpFloat {
            m: BigInt::zero(),
            e: 0,
        }
    }

    fn norm(mut self, prec: u32) -> Self {
        if self.m.is_zero() {
            self.e = 0;
            return self;
        }
        let bits = self.m.magnitude().bits() as i64;
        let excess = bits - prec as i64;
        if excess > 0 {
            self.m >>= excess;
            self.e += excess;
        }
        self
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        if v == 0.0 {
            return Self::zero();
        }
        assert!(v.is_finite(), "non-finite float");
        let (mant, exp) = frexp(v);
        // mant in [0.5, 1); scale to 53-bit integer
        let m = BigInt::from((mant * (1u64 << 53) as f64) as i64);
        MpFloat { m, e: exp - 53 }.norm(prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let nb = q.numer().magnitude().bits() as i64;
        let db = q.denom().magnitude().bits() as i64;
        let s = (prec as i64 + 2 + db - nb).max(0);
        let m = (q.numer() << s) / q.denom();
        MpFloat { m, e: -s }.norm(prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let bits = self.m.magnitude().bits() as i64;
        if bits <= 53 {
            return self.m.to_f64().unwrap() * exp2(self.e);
        }
        let top = (&self.m >> (bits - 53)).to_f64().unwrap();
        top * exp2(self.e + bits - 53)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        if self.m.is_zero() {
            return o.clone();
        }
        if o.m.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let shift = hi.e - lo.e;
        // The low part is negligible past the working precision.
        let hi_bits = hi.m.magnitude().bits() as i64;
        if shift > hi_bits + prec as i64 + 4 {
            return hi.clone();
        }
        MpFloat {
            m: (&hi.m << shift) + &lo.m,
            e: lo.e,
        }
        .norm(prec)
    }

    pub fn neg(&self) -> Self {
        MpFloat {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        MpFloat {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
        .norm(prec)
    }

    pub fn div(&self, o: &Self, prec: u32) -> Self {
        assert!(!o.m.is_zero(), "division by zero");
        if self.m.is_zero() {
            return Self::zero();
        }
        let nb = self.m.magnitude().bits() as i64;
        let db = o.m.magnitude().bits() as i64;
        let s = (prec as i64 + 2 + db - nb).max(0);
        MpFloat {
            m: (&self.m << s) / &o.m,
            e: self.e - o.e - s,
        }
        .norm(prec)
    }

    /// The exact rational value `m * 2^e`.
    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e)
        } else {
            BigRational::new(self.m.clone(), BigInt::from(1) << (-self.e) as u64)
        }
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.m.is_negative(), "sqrt of negative value");
        if self.m.is_zero() {
            return Self::zero();
        }
        let bits = self.m.magnitude().bits() as i64;
        // Shift so the shifted exponent is even and the mantissa carries
        // at least 2*prec bits.
        let mut s = (2 * prec as i64 + 2 - bits).max(0);
        if (self.e - s) % 2 != 0 {
            s += 1;
        }
        let r = (&self.m << s).sqrt();
        MpFloat {
            m: r,
            e: (self.e - s) / 2,
        }
        .norm(prec)
    }
}

fn frexp(v: f64) -> (f64, i64) {
    let bits = v.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    if exp_field == 0 {
        // subnormal: scale up first
        let scaled = v * exp2(64);
        let (m, e) = frexp(scaled);
        return (m, e - 64);
    }
    let e = exp_field - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

fn exp2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        f64::from_bits(if e >= -1022 {
            (((e + 1023) as u64) << 52) as u64
        } else {
            1u64 << (e + 1074)
        })
    }
}

/// Complex number over [`MpFloat`] with an attached working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
    pub prec: u32,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat, prec: u32) -> Self {
        MpComplex { re, im, prec }
    }

    fn p(&self, o: &Self) -> u32 {
        self.prec.max(o.prec)
    }
}

/// Complex scalar abstraction for the numeric pipeline.
///
/// `prec` is the requested precision in bits; the `Complex64` instance
/// ignores it.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + 'static {
    const PREC_TAG: &'static str;
    fn from_c64(z: Complex64, prec: u32) -> Self;
    fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Self;
    fn to_c64(&self) -> Complex64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> f64;
    fn is_zero(&self) -> bool;

    /// Embed an exact element, sending `sqrt(d)` to the principal root.
    fn from_ext(x: &Ext, prec: u32) -> Self {
        let zero = BigRational::zero();
        let a = Self::from_rationals(x.rational_part(), &zero, prec);
        if x.is_rational() {
            return a;
        }
        let d = x.radicand();
        let b = Self::from_rationals(&x.quad_part(), &zero, prec);
        let sqrt_abs_d = Self::sqrt_rational_abs(d, prec);
        let root = if d.is_negative() {
            Self::mul_i(&sqrt_abs_d)
        } else {
            sqrt_abs_d
        };
        a.add(&b.mul(&root))
    }

    fn sqrt_rational_abs(d: &BigRational, prec: u32) -> Self;
    fn mul_i(&self) -> Self;

    /// Recover a rational value this scalar approximates, or `None` when
    /// the imaginary part is non-negligible or no denominator up to
    /// `max_den` fits at this precision.
    fn approx_rational(&self, max_den: &BigInt) -> Option<BigRational>;
}

impl Scalar for Complex64 {
    const PREC_TAG: &'static str = "double";

    fn from_c64(z: Complex64, _prec: u32) -> Self {
        z
    }

    fn from_rationals(re: &BigRational, im: &BigRational, _prec: u32) -> Self {
        Complex64::new(rat_to_f64(re), rat_to_f64(im))
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn sqrt_rational_abs(d: &BigRational, _prec: u32) -> Self {
        Complex64::new(rat_to_f64(&d.abs()).sqrt(), 0.0)
    }

    fn mul_i(&self) -> Self {
        Complex64::new(-self.im, self.re)
    }

    fn approx_rational(&self, max_den: &BigInt) -> Option<BigRational> {
        if self.im.abs() > 1e-7 * (1.0 + self.re.abs()) {
            return None;
        }
        let cap = max_den.to_u64().unwrap_or(u64::MAX);
        crate::ext::rationalize_f64(self.re, cap, 1e-7)
    }
}

impl Scalar for MpComplex {
    const PREC_TAG: &'static str = "mp";

    fn from_c64(z: Complex64, prec: u32) -> Self {
        MpComplex::new(
            MpFloat::from_f64(z.re, prec),
            MpFloat::from_f64(z.im, prec),
            prec,
        )
    }

    fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        MpComplex::new(
            MpFloat::from_rational(re, prec),
            MpFloat::from_rational(im, prec),
            prec,
        )
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn add(&self, o: &Self) -> Self {
        let p = self.p(o);
        MpComplex::new(self.re.add(&o.re, p), self.im.add(&o.im, p), p)
    }

    fn sub(&self, o: &Self) -> Self {
        let p = self.p(o);
        MpComplex::new(self.re.sub(&o.re, p), self.im.sub(&o.im, p), p)
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.p(o);
        let re = self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), p);
        let im = self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), p);
        MpComplex::new(re, im, p)
    }

    fn div(&self, o: &Self) -> Self {
        let p = self.p(o);
        let n = o.re.mul(&o.re, p).add(&o.im.mul(&o.im, p), p);
        let re = self.re.mul(&o.re, p).add(&self.im.mul(&o.im, p), p);
        let im = self.im.mul(&o.re, p).sub(&self.re.mul(&o.im, p), p);
        MpComplex::new(re.div(&n, p), im.div(&n, p), p)
    }

    fn neg(&self) -> Self {
        MpComplex::new(self.re.neg(), self.im.neg(), self.prec)
    }

    fn abs(&self) -> f64 {
        let p = self.prec;
        self.re
            .mul(&self.re, p)
            .add(&self.im.mul(&self.im, p), p)
            .sqrt(p)
            .to_f64()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn sqrt_rational_abs(d: &BigRational, prec: u32) -> Self {
        let v = MpFloat::from_rational(&d.abs(), prec).sqrt(prec);
        MpComplex::new(v, MpFloat::zero(), prec)
    }

    fn mul_i(&self) -> Self {
        MpComplex::new(self.im.neg(), self.re.clone(), self.prec)
    }

    fn approx_rational(&self, max_den: &BigInt) -> Option<BigRational> {
        let tol_bits = (self.prec as i64 - 48).max(24);
        let tol = BigRational::new(BigInt::from(1), BigInt::from(1) << tol_bits as u64);
        let re = self.re.to_rational();
        let im = self.im.to_rational().abs();
        let one_plus = BigRational::from_integer(1.into()) + re.abs();
        if im > &tol * &one_plus {
            return None;
        }
        crate::ext::rationalize_rat(&re, max_den, &(&tol * &one_plus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn roundtrip_f64() {
        for v in [1.0, -3.25, 1e-12, 6.02e23, -0.1] {
            let x = MpFloat::from_f64(v, 212);
            assert_eq!(x.to_f64(), v);
        }
    }

    #[test]
    fn high_precision_division() {
        let prec = 212;
        let one = MpFloat::from_rational(&q(1, 1), prec);
        let three = MpFloat::from_rational(&q(3, 1), prec);
        let third = one.div(&three, prec);
        // 3 * (1/3) - 1 should be ~2^-210
        let err = three.mul(&third, prec).sub(&one, prec);
        assert!(err.to_f64().abs() < 2f64.powi(-200));
    }

    #[test]
    fn sqrt_two() {
        let prec = 212;
        let two = MpFloat::from_rational(&q(2, 1), prec);
        let r = two.sqrt(prec);
        let err = r.mul(&r, prec).sub(&two, prec);
        assert!(err.to_f64().abs() < 2f64.powi(-200));
    }

    #[test]
    fn complex_division() {
        let prec = 106;
        let a = MpComplex::from_c64(Complex64::new(1.0, 2.0), prec);
        let b = MpComplex::from_c64(Complex64::new(-0.5, 3.0), prec);
        let z = a.div(&b).mul(&b).sub(&a);
        assert!(z.abs() < 1e-25);
    }
}
