//! Log-gamma for positive arguments.

use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::hpreal::{bernoulli_over_factorial, ExtReal, PI};

fn half_ln_two_pi() -> ExtReal {
    static V: OnceLock<ExtReal> = OnceLock::new();
    *V.get_or_init(|| (PI * 2.0).ln() * 0.5)
}

/// `ln Γ(x)` for `x > 0`: shift to `x >= 20`, then Stirling through `B_30`.
pub fn ln_gamma(x: ExtReal) -> Result<ExtReal> {
    if !x.is_finite() || x <= ExtReal::ZERO {
        return domain(format!("ln Γ needs a positive argument, got {x}"));
    }
    let mut x = x;
    let mut shift = ExtReal::ONE;
    while x < ExtReal::from(20u32) {
        shift *= x;
        x += 1.0;
    }
    let inv = x.recip();
    let inv2 = inv.sqr();
    let mut corr = ExtReal::ZERO;
    let mut pw = inv;
    for m in 1..=15usize {
        // B_2m / (2m (2m-1)) = (2m-2)! * B_2m/(2m)!
        let mut fact = ExtReal::ONE;
        for i in 1..=(2 * m - 2) {
            fact *= i as f64;
        }
        corr += bernoulli_over_factorial(2 * m) * fact * pw;
        pw *= inv2;
    }
    Ok((x - 0.5) * x.ln() - x + half_ln_two_pi() + corr - shift.ln())
}

/// `Π Γ(num) / Π Γ(den)` for positive arguments.
pub fn gamma_ratio(num: &[ExtReal], den: &[ExtReal]) -> Result<ExtReal> {
    let mut s = ExtReal::ZERO;
    for &a in num {
        s += ln_gamma(a)?;
    }
    for &b in den {
        s -= ln_gamma(b)?;
    }
    Ok(s.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let mut f = ExtReal::ONE;
        for n in 1..25u32 {
            let g = ln_gamma(ExtReal::from(n + 1)).unwrap().exp();
            f *= n as f64;
            assert!(((g - f) / f).abs().to_f64() < 1e-29, "n = {n}");
        }
    }

    #[test]
    fn functional_equation() {
        for v in [ExtReal::HALF, ExtReal::from(1.5), PI, ExtReal::from(10u32)] {
            let d = ln_gamma(v + 1.0).unwrap() - ln_gamma(v).unwrap() - v.ln();
            assert!(d.abs().to_f64() <= 1e-28, "{v}");
        }
        assert!(ln_gamma(ExtReal::ONE).unwrap().abs().to_f64() < 1e-31);
    }

    #[test]
    fn half_integer() {
        let g = ln_gamma(ExtReal::HALF).unwrap().exp();
        assert!((g.sqr() - PI).abs().to_f64() < 1e-29);
    }

    #[test]
    fn ratio_matches_beta() {
        // B(1/3, 1/4) via Γ ratio and via Γ(x+1) = x Γ(x)
        let a = ExtReal::ratio(1, 3);
        let b = ExtReal::ratio(1, 4);
        let r = gamma_ratio(&[a, b], &[a + b]).unwrap();
        let r2 = gamma_ratio(&[a + 1.0, b + 1.0], &[a + b + 2.0]).unwrap() * (a + b) * (a + b + 1.0) / (a * b);
        assert!(((r - r2) / r).abs().to_f64() < 1e-30);
        assert!(ln_gamma(ExtReal::ZERO).is_err());
        assert!(ln_gamma(ExtReal::from(-1.5)).is_err());
    }
}
