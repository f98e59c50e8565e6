use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Exact rational or binary float with an explicit precision in bits.
///
/// Mixed arithmetic promotes to float; two floats combine at the smaller
/// of their precisions.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float { value: BigFloat, precision: usize },
}

fn int_to_float(n: &BigInt, p: usize) -> BigFloat {
    if let Some(i) = n.to_i64() {
        return BigFloat::from_i64(i, p.max(64));
    }
    let wp = p.max(n.bits() as usize + 64);
    let s = n.to_string();
    with_consts(|cc| BigFloat::parse(&s, Radix::Dec, wp, RM, cc))
}

fn rational_to_float(r: &BigRational, p: usize) -> BigFloat {
    let n = int_to_float(r.numer(), p);
    if r.denom().is_one() {
        let mut n = n;
        let _ = n.set_precision(p, RM);
        return n;
    }
    n.div(&int_to_float(r.denom(), p), p, RM)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(i: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(i)))
    }

    /// `p/q` in lowest terms. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn from_f64(f: f64, precision: usize) -> Self {
        Scalar::Float {
            value: BigFloat::from_f64(f, precision),
            precision,
        }
    }

    /// `2^e` as an exact rational.
    pub fn pow2(e: i64) -> Self {
        let m = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Scalar::Rational(BigRational::from_integer(m))
        } else {
            Scalar::Rational(BigRational::new(BigInt::one(), m))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float { value, .. } => value.is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float { .. } => None,
        }
    }

    pub fn precision(&self) -> Option<usize> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Float { precision, .. } => Some(*precision),
        }
    }

    fn big_float(&self, p: usize) -> BigFloat {
        match self {
            Scalar::Rational(r) => rational_to_float(r, p),
            Scalar::Float { value, precision } => {
                let mut v = value.clone();
                if *precision != p {
                    let _ = v.set_precision(p, RM);
                }
                v
            }
        }
    }

    /// Convert to a float of precision `p` (explicit, so lowering is allowed).
    pub fn to_float(&self, p: usize) -> Scalar {
        Scalar::Float {
            value: self.big_float(p),
            precision: p,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float { value, .. } => {
                let s = with_consts(|cc| value.format(Radix::Dec, RM, cc));
                s.ok().and_then(|s| s.parse::<f64>().ok()).unwrap_or(f64::NAN)
            }
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(exact(a, b)),
            _ => {
                let p = match (self.precision(), other.precision()) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                Scalar::Float {
                    value: float(&self.big_float(p), &other.big_float(p), p),
                    precision: p,
                }
            }
        }
    }

    /// `self / other`, or `None` when `other` is zero.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        Some(self.binary(other, |a, b| a / b, |a, b, p| a.div(b, p, RM)))
    }

    pub fn recip(&self) -> Option<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn powi(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float { value, precision } => Scalar::Float {
                value: value.abs(),
                precision: *precision,
            },
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float { value, .. } => {
                if value.is_zero() {
                    0
                } else if value.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn transcendental(&self, p: usize, f: impl FnOnce(&BigFloat, usize, &mut Consts) -> BigFloat) -> Scalar {
        let p = self.precision().map_or(p, |q| q.min(p));
        let x = self.big_float(p);
        let value = with_consts(|cc| f(&x, p, cc));
        Scalar::Float { value, precision: p }
    }

    pub fn exp(&self, p: usize) -> Scalar {
        self.transcendental(p, |x, p, cc| x.exp(p, RM, cc))
    }

    pub fn sinh(&self, p: usize) -> Scalar {
        self.transcendental(p, |x, p, cc| x.sinh(p, RM, cc))
    }

    pub fn sqrt(&self, p: usize) -> Scalar {
        self.transcendental(p, |x, p, _| x.sqrt(p, RM))
    }

    /// `|self| < 2^-bits`.
    pub fn abs_below_pow2(&self, bits: u32) -> bool {
        self.abs() < Scalar::pow2(-(bits as i64))
    }

    pub fn parse_with_precision(s: &str, precision: usize) -> Result<Scalar> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Invalid("empty number".into()));
        }
        let integer = |p: &str| {
            let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
            !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
        };
        let is_rational = t.split('/').count() <= 2 && t.split('/').all(integer);
        if is_rational {
            let (p, q) = match t.split_once('/') {
                Some((p, q)) => (p, q),
                None => (t, "1"),
            };
            let p: BigInt = p.parse().map_err(|_| Error::Invalid(format!("bad rational '{s}'")))?;
            let q: BigInt = q.parse().map_err(|_| Error::Invalid(format!("bad rational '{s}'")))?;
            if q.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in '{s}'")));
            }
            return Ok(Scalar::Rational(BigRational::new(p, q)));
        }
        let value = with_consts(|cc| BigFloat::parse(t, Radix::Dec, precision, RM, cc));
        if value.is_nan() || value.is_inf() {
            return Err(Error::Invalid(format!("bad number '{s}'")));
        }
        Ok(Scalar::Float { value, precision })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float { value, .. } => {
                let s = with_consts(|cc| value.format(Radix::Dec, RM, cc)).map_err(|_| fmt::Error)?;
                f.write_str(&s)
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        Scalar::parse_with_precision(s, DEFAULT_PRECISION)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Scalar::int(i)),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => (self - other).is_zero(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Some(a.cmp(b)),
            _ => Some((self - other).signum().cmp(&0)),
        }
    }
}

impl From<i64> for Scalar {
    fn from(i: i64) -> Scalar {
        Scalar::int(i)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float { value, precision } => Scalar::Float {
                value: value.neg(),
                precision: *precision,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.binary(o, |a, b| a + b, |a, b, p| a.add(b, p, RM))
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.binary(o, |a, b| a - b, |a, b, p| a.sub(b, p, RM))
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.binary(o, |a, b| a * b, |a, b, p| a.mul(b, p, RM))
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] where a zero
/// divisor is possible.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
        impl $atr<&Scalar> for Scalar {
            fn $am(&mut self, o: &Scalar) {
                *self = (&*self).$m(o);
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $am(&mut self, o: Scalar) {
                *self = (&*self).$m(&o);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        &self / &o
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        &self / o
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = Scalar::ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Scalar::zero().to_string(), "0/1");
    }

    #[test]
    fn parse_round_trip() {
        let r: Scalar = "10/-4".parse().unwrap();
        assert_eq!(r, Scalar::ratio(-5, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        let f: Scalar = "0.25".parse().unwrap();
        assert_eq!(f.precision(), Some(DEFAULT_PRECISION));
        assert_eq!(f, Scalar::ratio(1, 4));
    }

    #[test]
    fn mixed_precision_takes_minimum() {
        let a = Scalar::ratio(1, 3).to_float(128);
        let b = Scalar::ratio(1, 7).to_float(256);
        assert_eq!((&a + &b).precision(), Some(128));
        assert_eq!((&a * &Scalar::int(2)).precision(), Some(128));
    }

    #[test]
    fn sinh_matches_exp_form() {
        let x = Scalar::ratio(3, 2);
        let s = x.sinh(256);
        let e = (x.exp(256) - (-&x).exp(256)) * Scalar::ratio(1, 2);
        assert!((s - e).abs_below_pow2(240));
    }

    #[test]
    fn checked_div_rejects_zero() {
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_none());
        assert!(Scalar::one().checked_div(&Scalar::zero().to_float(64)).is_none());
    }

    #[test]
    fn ordering() {
        assert!(Scalar::ratio(1, 3) < Scalar::ratio(1, 2));
        assert!(Scalar::ratio(1, 3).to_float(128) < Scalar::ratio(1, 2));
        assert!(Scalar::pow2(-3) == Scalar::ratio(1, 8));
    }
}
