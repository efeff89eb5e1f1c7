use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binom, ExtReal};
use crate::error::{domain, Result};

/// Largest tabulated index.
pub const MAX_INDEX: usize = 60;

/// `B_0..=B_60` with `B_1 = -1/2`, from `sum_{j<=n} C(n+1, j) B_j = 0`.
pub fn bernoulli_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                let c = binom(n as i64 + 1, j as i64).expect("n <= 61");
                acc += bj * BigRational::from_integer(BigInt::from(c));
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    })
}

/// Exact `B_{2m}` for even indices up to 60.
pub fn bernoulli(n: u32) -> Result<BigRational> {
    if n % 2 == 1 {
        return domain(format!("bernoulli: odd index {n}"));
    }
    if n as usize > MAX_INDEX {
        return domain(format!("bernoulli: index {n} above {MAX_INDEX}"));
    }
    Ok(bernoulli_table()[n as usize].clone())
}

/// `B_{2i} / (2i)!` as double-double, for `i = 0..=30`.
pub fn bernoulli_over_factorial(two_i: usize) -> ExtReal {
    static TABLE: OnceLock<Vec<ExtReal>> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        let mut fact = BigInt::one();
        let mut out = Vec::new();
        for n in 0..=MAX_INDEX {
            if n > 0 {
                fact *= n;
            }
            let q = &bernoulli_table()[n] / BigRational::from_integer(fact.clone());
            out.push(ExtReal::from_rational(&q));
        }
        out
    });
    t[two_i]
}

fn bernoulli_ext(n: usize) -> ExtReal {
    static TABLE: OnceLock<Vec<ExtReal>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_table().iter().map(ExtReal::from_rational).collect())[n]
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: usize, x: ExtReal) -> ExtReal {
    let mut acc = ExtReal::ZERO;
    for k in 0..=n {
        let c = binom(n as i64, k as i64).expect("n <= 60") as f64;
        acc = acc * x + bernoulli_ext(k) * c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(62).is_err());
    }

    #[test]
    fn odd_values_vanish_beyond_one() {
        let t = bernoulli_table();
        assert_eq!(t[1], q(-1, 2));
        for n in (3..=MAX_INDEX).step_by(2) {
            assert!(t[n].is_zero());
        }
    }

    #[test]
    fn recurrence_exact_to_sixty() {
        let t = bernoulli_table();
        for n in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            for j in 0..=n {
                acc += &t[j] * BigRational::from_integer(binom(n as i64 + 1, j as i64).unwrap().into());
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn polynomial_values() {
        let half = ExtReal::HALF;
        assert!((bernoulli_poly(2, half) - ExtReal::ratio(-1, 12)).abs().to_f64() < 1e-31);
        assert_eq!(bernoulli_poly(3, ExtReal::ONE), ExtReal::ZERO);
        assert!((bernoulli_poly(4, ExtReal::ONE) - ExtReal::ratio(-1, 30)).abs().to_f64() < 1e-31);
    }
}
