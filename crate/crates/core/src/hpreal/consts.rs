use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExtReal;
use crate::error::{domain, Result};

/// π = 3.14159265358979323846264338327950288419716939937510...
pub const PI: ExtReal =
    ExtReal::from_parts(f64::from_bits(0x400921FB54442D18), f64::from_bits(0x3CA1A62633145C07));

/// ln 2 = 0.69314718055994530941723212145817656807550013436025...
pub const LN2: ExtReal =
    ExtReal::from_parts(f64::from_bits(0x3FE62E42FEFA39EF), f64::from_bits(0x3C7ABC9E3B39803F));

pub fn const_pi() -> ExtReal {
    PI
}

pub fn const_ln2() -> ExtReal {
    LN2
}

/// `sum_{n} sign^n / ((2n+1) x^(2n+1))` until the next term is below `bound`;
/// returns (partial sum, first omitted term magnitude).
fn odd_power_series(x: u32, alternating: bool, bound: &BigRational) -> (BigRational, BigRational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut pow = x.clone();
    let mut sum = BigRational::zero();
    let mut n: u32 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), pow.clone() * (2 * n + 1));
        if &term < bound {
            return (sum, term);
        }
        if alternating && n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        pow *= &x2;
        n += 1;
    }
}

/// Compares the embedded π and ln 2 with exact-rational series
/// (16 atan(1/5) - 4 atan(1/239) and 2 atanh(1/3)).
pub fn self_check() -> Result<()> {
    let bound = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 45));
    let (a5, e5) = odd_power_series(5, true, &bound);
    let (a239, e239) = odd_power_series(239, true, &bound);
    let pi = a5 * BigInt::from(16) - a239 * BigInt::from(4);
    let pi_err = e5 * BigInt::from(16) + e239 * BigInt::from(4);
    let (h3, e3) = odd_power_series(3, false, &bound);
    let ln2 = h3 * BigInt::from(2);
    // geometric remainder bound for the positive series
    let ln2_err = e3 * BigInt::from(4);
    let tol = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 32));
    let check = |name: &str, embedded: ExtReal, series: BigRational, err: BigRational| {
        let diff = (embedded.to_rational().expect("finite") - series).abs();
        if diff > tol.clone() + err {
            return domain(format!("embedded {name} disagrees with its series"));
        }
        Ok(())
    };
    check("pi", PI, pi, pi_err)?;
    check("ln2", LN2, ln2, ln2_err)
}
