use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Result};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` of two doubles, about 106 bits of significand.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExtReal {
    hi: f64,
    lo: f64,
}

/// 2^-104, the relative accuracy target of the arithmetic.
pub const EPS: f64 = 4.930380657631324e-32;

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal { hi: 0.0, lo: 0.0 };
    pub const ONE: ExtReal = ExtReal { hi: 1.0, lo: 0.0 };
    pub const HALF: ExtReal = ExtReal { hi: 0.5, lo: 0.0 };
    pub const NAN: ExtReal = ExtReal { hi: f64::NAN, lo: f64::NAN };

    /// Caller guarantees `|lo| <= ulp(hi)/2`.
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        ExtReal { hi, lo }
    }

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        ExtReal { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        ExtReal { hi: x, lo: 0.0 }
    }

    pub fn from_i64(n: i64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Self::new(hi, lo)
    }

    pub fn from_u64(n: u64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Self::new(hi, lo)
    }

    /// p/q rounded to double-double.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }

    pub fn from_rational(x: &BigRational) -> Self {
        let hi = x.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() || hi == 0.0 {
            return Self::from_f64(hi);
        }
        let rest = x - BigRational::from_float(hi).expect("finite");
        let lo = rest.to_f64().unwrap_or(0.0);
        Self::new(hi, lo)
    }

    /// Exact value as a rational; `None` for non-finite values.
    pub fn to_rational(self) -> Option<BigRational> {
        let hi = BigRational::from_float(self.hi)?;
        let lo = BigRational::from_float(self.lo)?;
        Some(hi + lo)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn sqr(self) -> Self {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        ExtReal { hi, lo }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            return domain("division by zero");
        }
        Ok(self / rhs)
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Multiplication by 2^k, exact barring overflow/underflow.
    pub fn ldexp(self, k: i32) -> Self {
        let mut x = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = f64::from_bits(((1023 + step) as u64) << 52);
            x = ExtReal { hi: x.hi * f, lo: x.lo * f };
            k -= step;
        }
        x
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::ZERO } else { Self::NAN };
        }
        let q = Self::from_f64(self.hi.sqrt());
        q + (self - q.sqr()) / (q * 2.0)
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            Self::new(hi, self.lo.floor())
        } else {
            ExtReal { hi, lo: 0.0 }
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(self) -> Self {
        if self.is_sign_negative() {
            -((-self) + Self::HALF).floor()
        } else {
            (self + Self::HALF).floor()
        }
    }

    /// `Some(n)` when the value is exactly an integer of moderate size.
    pub fn to_integer(self) -> Option<i64> {
        if self.floor() != self || self.hi.abs() >= 9.0e15 {
            return None;
        }
        Some(self.hi as i64 + self.lo as i64)
    }

    pub fn to_bigint_floor(self) -> Option<BigInt> {
        let r = self.to_rational()?;
        Some(r.floor().to_integer())
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<i32> for ExtReal {
    fn from(n: i32) -> Self {
        Self::from_f64(n as f64)
    }
}

impl From<u32> for ExtReal {
    fn from(n: u32) -> Self {
        Self::from_f64(n as f64)
    }
}

impl From<u64> for ExtReal {
    fn from(n: u64) -> Self {
        Self::from_u64(n)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> Self {
        ExtReal { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        ExtReal { hi, lo }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        ExtReal { hi, lo }
    }
}

impl Div for ExtReal {
    type Output = ExtReal;
    /// Division by zero follows IEEE semantics; use `checked_div` for an error.
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Self::from_f64(q1);
        }
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        ExtReal { hi: q1, lo: q2 } + q3
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;
    fn add(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        ExtReal { hi, lo }
    }
}

impl Sub<f64> for ExtReal {
    type Output = ExtReal;
    fn sub(self, b: f64) -> Self {
        self + (-b)
    }
}

impl Mul<f64> for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn mul(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        ExtReal { hi, lo }
    }
}

impl Div<f64> for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn div(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let e = e - p2 + self.lo;
        let q2 = (s + e) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        ExtReal { hi, lo }
    }
}

macro_rules! assign_ops {
    ($rhs:ty) => {
        impl AddAssign<$rhs> for ExtReal {
            fn add_assign(&mut self, b: $rhs) {
                *self = *self + b;
            }
        }
        impl SubAssign<$rhs> for ExtReal {
            fn sub_assign(&mut self, b: $rhs) {
                *self = *self - b;
            }
        }
        impl MulAssign<$rhs> for ExtReal {
            fn mul_assign(&mut self, b: $rhs) {
                *self = *self * b;
            }
        }
        impl DivAssign<$rhs> for ExtReal {
            fn div_assign(&mut self, b: $rhs) {
                *self = *self / b;
            }
        }
    };
}
assign_ops!(ExtReal);
assign_ops!(f64);

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) if !r.is_zero() => f.write_str(&super::decimal::to_sci(&r, 32)),
            Some(_) => f.write_str("0"),
            None => write!(f, "{}", self.hi),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(x: ExtReal, exact: &BigRational) -> f64 {
        let diff = x.to_rational().unwrap() - exact;
        if exact.is_zero() {
            return diff.to_f64().unwrap().abs();
        }
        (diff / exact).to_f64().unwrap().abs()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let x = ExtReal::ONE + ExtReal::from_f64(-1.0);
        assert_eq!(x, ExtReal::ZERO);
    }

    #[test]
    fn third_times_three() {
        let third = ExtReal::ONE / ExtReal::from_f64(3.0);
        let back = third * 3.0;
        assert!((back - ExtReal::ONE).abs().to_f64() <= EPS);
    }

    #[test]
    fn canonical_form() {
        let x = ExtReal::new(1.0, 1e-17) * ExtReal::from_f64(3.0) + ExtReal::from_f64(1e-20);
        assert!(x.lo().abs() <= 0.5 * f64::EPSILON * x.hi().abs());
    }

    #[test]
    fn division_matches_exact() {
        let a = ExtReal::from_f64(355.0);
        let b = ExtReal::from_f64(113.0);
        let q = a / b;
        let exact = BigRational::new(355.into(), 113.into());
        assert!(rel_err(q, &exact) <= EPS);
    }

    #[test]
    fn checked_division_by_zero() {
        assert!(ExtReal::ONE.checked_div(ExtReal::ZERO).is_err());
    }

    #[test]
    fn from_rational_round_trip() {
        let r = BigRational::new(1.into(), 7.into());
        let x = ExtReal::from_rational(&r);
        assert!(rel_err(x, &r) <= EPS / 4.0);
    }

    #[test]
    fn integer_conversion() {
        let big = (1i64 << 62) + 12345;
        let x = ExtReal::from_i64(big);
        assert_eq!(x.to_rational().unwrap(), BigRational::from_integer(big.into()));
        assert_eq!(ExtReal::from_f64(-2.5).floor(), ExtReal::from_f64(-3.0));
        assert_eq!(ExtReal::from_f64(2.5).round(), ExtReal::from_f64(3.0));
        assert_eq!(ExtReal::from_f64(7.0).to_integer(), Some(7));
        assert_eq!(ExtReal::from_f64(7.5).to_integer(), None);
    }

    #[test]
    fn sqrt_two() {
        let s = ExtReal::from_f64(2.0).sqrt();
        assert!((s.sqr() - 2.0).abs().to_f64() < 4.0 * EPS);
    }

    #[test]
    fn powers() {
        let x = ExtReal::from_f64(3.0);
        assert_eq!(x.powi(5), ExtReal::from_f64(243.0));
        let inv = x.powi(-2);
        assert!((inv * 9.0 - 1.0).abs().to_f64() < 2.0 * EPS);
        assert_eq!(ExtReal::from_f64(1.5).ldexp(3), ExtReal::from_f64(12.0));
    }
}
