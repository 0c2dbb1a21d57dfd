//! Exact rational arithmetic in canonical form.
//!
//! Every value is stored with a positive denominator coprime to the
//! numerator, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::RationalError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `n/d` in canonical form.
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, RationalError> {
        let d = d.into();
        if d.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(n.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        let magnitude = BigInt::one() << k.unsigned_abs();
        if k >= 0 {
            Rational::from_integer(magnitude)
        } else {
            Rational(BigRational::new_raw(BigInt::one(), magnitude))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents invert, so `0^-k` is an error.
    pub fn pow(&self, exp: i32) -> Result<Self, RationalError> {
        if exp < 0 && self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract_part(&self) -> Self {
        Rational(&self.0 - self.0.floor())
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Bit length of the larger of numerator and denominator.
    pub fn bit_size(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    /// Smallest integer `k` with `2^k >= self`.
    pub fn ceil_log2(&self) -> Result<i64, RationalError> {
        if !self.is_positive() {
            return Err(RationalError::NonPositive(self.to_string()));
        }
        let n = self.numer().magnitude();
        let d = self.denom().magnitude();
        let mut k = n.bits() as i64 - d.bits() as i64;
        // k is within one of the answer; settle it exactly.
        while !pow2_covers(k, n, d) {
            k += 1;
        }
        while pow2_covers(k - 1, n, d) {
            k -= 1;
        }
        Ok(k)
    }

    /// Largest integer `k` with `2^k <= self`.
    pub fn floor_log2(&self) -> Result<i64, RationalError> {
        Ok(-self.recip()?.ceil_log2()?)
    }

    /// Rounds to `digits` fractional decimal digits, half away from zero,
    /// and renders the result. A value that rounds to zero prints unsigned.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self.abs().0 * BigRational::from_integer(scale.clone());
        let two = BigRational::from_integer(BigInt::from(2));
        let rounded = (scaled + BigRational::one() / two).floor().to_integer();
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let mut out = String::new();
        if self.is_negative() && !rounded.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            let frac = frac_part.to_string();
            out.push('.');
            out.extend(std::iter::repeat_n('0', digits - frac.len()));
            out.push_str(&frac);
        }
        out
    }

    /// Rounds toward zero to a dyadic rational with at most `bits`
    /// significant bits. The magnitude never grows, so a lower bound on a
    /// positive quantity (or an upper bound on a negative one) stays one.
    pub fn truncate_significant_bits(&self, bits: u32) -> Self {
        if self.is_zero() {
            return Rational::zero();
        }
        let e = self.abs().floor_log2().expect("nonzero");
        let shift = bits as i64 - 1 - e;
        let scaled = self.abs() * Rational::pow2(shift);
        let truncated = Rational::from_integer(scaled.floor()) * Rational::pow2(-shift);
        if self.is_negative() {
            -truncated
        } else {
            truncated
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

fn pow2_covers(k: i64, n: &BigUint, d: &BigUint) -> bool {
    if k >= 0 {
        (d << k as u64) >= *n
    } else {
        *d >= (n << (-k) as u64)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Accepts `n`, `p/q` and exact decimals such as `-1.414`.
impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Parse(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = parse_int(p.trim()).ok_or_else(bad)?;
            let q: BigInt = parse_int(q.trim()).ok_or_else(bad)?;
            return Rational::new(p, q);
        }
        if let Some((int, frac)) = t.split_once('.') {
            let (negative, int) = match int.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int.strip_prefix('+').unwrap_or(int)),
            };
            let digits_ok = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
            if frac.is_empty() || !digits_ok(int) || !digits_ok(frac) {
                return Err(bad());
            }
            let joined = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
            let n: BigInt = joined.parse().map_err(|_| bad())?;
            let d = BigInt::from(10u32).pow(frac.len() as u32);
            let r = Rational::new(n, d)?;
            return Ok(if negative { -r } else { r });
        }
        parse_int(t).map(Rational::from_integer).ok_or_else(bad)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor; use [`Rational::checked_div`] when the
/// divisor is not known to be nonzero.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Three-way comparison; rationals are decidably ordered.
pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}
