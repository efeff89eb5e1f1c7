//! Exact decimal rendering of rationals (and therefore of double-double values).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), n as usize)
}

/// Round a non-negative rational to the nearest integer, ties away from zero.
fn round_nonneg(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_rem(x.denom());
    if r.clone() * 2 >= *x.denom() {
        q + 1
    } else {
        q
    }
}

fn scale10(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        x * BigRational::from_integer(pow10(e as u32))
    } else {
        x / BigRational::from_integer(pow10((-e) as u32))
    }
}

/// `|x| = m * 10^e` with `1 <= m < 10`.
fn decimal_exponent(a: &BigRational) -> i64 {
    let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    loop {
        let s = scale10(a, -e);
        if s >= BigRational::from_integer(BigInt::from(10)) {
            e += 1;
        } else if s < BigRational::one() {
            e -= 1;
        } else {
            return e;
        }
    }
}

/// Scientific notation with `sig` significant digits, e.g. `-1.5000e-03`.
pub fn to_sci(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let a = x.abs();
    let mut e = decimal_exponent(&a);
    let mut n = round_nonneg(&scale10(&a, sig as i64 - 1 - e));
    if n >= pow10(sig as u32) {
        n /= 10;
        e += 1;
    }
    let digits = n.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    let esign = if e < 0 { '-' } else { '+' };
    if sig == 1 {
        format!("{sign}{digits}e{esign}{:02}", e.abs())
    } else {
        format!("{sign}{}.{}e{esign}{:02}", &digits[..1], &digits[1..], e.abs())
    }
}

/// Fixed notation with exactly `decimals` digits after the point.
pub fn to_fixed(x: &BigRational, decimals: usize) -> String {
    let n = round_nonneg(&scale10(&x.abs(), decimals as i64));
    let mut digits = n.to_string();
    if digits.len() <= decimals {
        digits = "0".repeat(decimals + 1 - digits.len()) + &digits;
    }
    let split = digits.len() - decimals;
    let sign = if x.is_negative() && n.sign() != Sign::NoSign { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{digits}")
    } else {
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

/// Parse a decimal string (`-1.25`, `3e-5`, `2/3`) into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let r = scale10(&BigRational::from_integer(digits), exp - frac.len() as i64);
    Some(if neg { -r } else { r })
}
