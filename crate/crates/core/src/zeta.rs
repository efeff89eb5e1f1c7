//! Single zeta values ζ(k), alternating values ζ(k̄) and the regularized ring
//! with ζ(1) = T.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use crate::error::{domain, Error, Result};
use crate::hpreal::{bernoulli_over_factorial, ExtReal, LN2};
use crate::series::{euler_transform, SeriesResult};

pub const MAX_WEIGHT: u32 = 60;

/// ζ(weight), or ζ(weight̄) when `bar` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZetaIndex {
    pub weight: u32,
    pub bar: bool,
}

impl ZetaIndex {
    pub const fn plain(weight: u32) -> Self {
        ZetaIndex { weight, bar: false }
    }

    pub const fn barred(weight: u32) -> Self {
        ZetaIndex { weight, bar: true }
    }
}

impl fmt::Display for ZetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bar {
            write!(f, "~{}", self.weight)
        } else {
            write!(f, "{}", self.weight)
        }
    }
}

/// `finite + tcoef·T`, where T stands for the divergent ζ(1).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RegValue {
    pub finite: ExtReal,
    pub tcoef: ExtReal,
}

impl RegValue {
    pub const ZERO: RegValue = RegValue { finite: ExtReal::ZERO, tcoef: ExtReal::ZERO };
    pub const T: RegValue = RegValue { finite: ExtReal::ZERO, tcoef: ExtReal::ONE };

    pub fn new(finite: ExtReal, tcoef: ExtReal) -> Self {
        RegValue { finite, tcoef }
    }

    pub fn finite(x: ExtReal) -> Self {
        RegValue { finite: x, tcoef: ExtReal::ZERO }
    }

    pub fn is_convergent(&self) -> bool {
        self.tcoef.is_zero()
    }

    /// Ring product; T·T is outside the ring and reported as an error.
    pub fn try_mul(&self, other: &RegValue) -> Result<RegValue> {
        if !self.tcoef.is_zero() && !other.tcoef.is_zero() {
            return Err(Error::DivergentProduct);
        }
        Ok(RegValue {
            finite: self.finite * other.finite,
            tcoef: self.finite * other.tcoef + self.tcoef * other.finite,
        })
    }

    pub fn scale(&self, c: ExtReal) -> RegValue {
        RegValue { finite: self.finite * c, tcoef: self.tcoef * c }
    }

    /// Componentwise maximum of absolute values.
    pub fn abs_parts(&self) -> (ExtReal, ExtReal) {
        (self.finite.abs(), self.tcoef.abs())
    }
}

impl Add for RegValue {
    type Output = RegValue;
    fn add(self, o: Self) -> Self {
        RegValue { finite: self.finite + o.finite, tcoef: self.tcoef + o.tcoef }
    }
}

impl Sub for RegValue {
    type Output = RegValue;
    fn sub(self, o: Self) -> Self {
        RegValue { finite: self.finite - o.finite, tcoef: self.tcoef - o.tcoef }
    }
}

impl Neg for RegValue {
    type Output = RegValue;
    fn neg(self) -> Self {
        RegValue { finite: -self.finite, tcoef: -self.tcoef }
    }
}

impl AddAssign for RegValue {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for RegValue {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Mul<f64> for RegValue {
    type Output = RegValue;
    fn mul(self, c: f64) -> Self {
        RegValue { finite: self.finite * c, tcoef: self.tcoef * c }
    }
}

impl fmt::Display for RegValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tcoef.is_zero() {
            write!(f, "{}", self.finite)
        } else {
            write!(f, "{} + ({})·T", self.finite, self.tcoef)
        }
    }
}

/// Euler–Maclaurin evaluation of ζ(k) with `n` explicit terms and `m`
/// Bernoulli corrections.
pub fn zeta_em(k: u32, n: u32, m: usize) -> ExtReal {
    let kk = k as i32;
    let mut s = ExtReal::ZERO;
    for j in (1..n).rev() {
        s += ExtReal::from(j).powi(-kk);
    }
    let nn = ExtReal::from(n);
    let inv = nn.recip();
    let nk = inv.powi(kk);
    s += nk * nn / (k - 1) as f64;
    s += nk * 0.5;
    // B_2i/(2i)! (k)_{2i-1} n^{-k-2i+1}
    let mut poch = ExtReal::from(k);
    let mut pw = nk * inv;
    let inv2 = inv.sqr();
    for i in 1..=m {
        s += bernoulli_over_factorial(2 * i) * poch * pw;
        let a = (k as usize + 2 * i - 1) as f64;
        poch = poch * a * (a + 1.0);
        pw *= inv2;
    }
    s
}

fn zeta_table() -> &'static [ExtReal] {
    static TABLE: OnceLock<Vec<ExtReal>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![ExtReal::NAN, ExtReal::NAN];
        t.extend((2..=MAX_WEIGHT).map(|k| zeta_em(k, 40, 20)));
        t
    })
}

/// ζ(k) for `2 <= k <= 60`.
pub fn zeta(k: u32) -> Result<ExtReal> {
    if k < 2 {
        return domain(format!("zeta({k}) needs k >= 2; use zeta_reg for k = 0, 1"));
    }
    if k > MAX_WEIGHT {
        return domain(format!("zeta({k}) above weight cap {MAX_WEIGHT}"));
    }
    Ok(zeta_table()[k as usize])
}

/// ζ(k̄) = sum (-1)^m m^-k; equals -(1 - 2^(1-k)) ζ(k) for k >= 2 and -ln 2 at k = 1.
pub fn zeta_bar(k: u32) -> Result<ExtReal> {
    match k {
        0 => domain("zeta_bar(0) is regularized; use zeta_reg"),
        1 => Ok(-LN2),
        _ => {
            let z = zeta(k)?;
            let factor = ExtReal::ONE - ExtReal::ONE.ldexp(1 - k as i32);
            Ok(-(factor * z))
        }
    }
}

/// Regularized value: ζ(0) = ζ(0̄) = -1/2, ζ(1) = T, ζ(1̄) = -ln 2.
pub fn zeta_reg(idx: ZetaIndex) -> Result<RegValue> {
    if idx.weight > MAX_WEIGHT {
        return domain(format!("zeta index {idx} above weight cap {MAX_WEIGHT}"));
    }
    Ok(match (idx.weight, idx.bar) {
        (0, _) => RegValue::finite(-ExtReal::HALF),
        (1, false) => RegValue::T,
        (k, false) => RegValue::finite(zeta(k)?),
        (k, true) => RegValue::finite(zeta_bar(k)?),
    })
}

/// Euler-transformed partial sums of `sum (-1)^m m^-k`, independent of the
/// ζ(k) route.
pub fn zeta_bar_direct(k: u32, terms: u32) -> Result<SeriesResult> {
    if k < 1 {
        return domain("zeta_bar_direct needs k >= 1");
    }
    if terms < 8 {
        return domain("zeta_bar_direct needs at least 8 terms");
    }
    let order = (terms as usize / 2).min(32);
    let mut partials = Vec::with_capacity(terms as usize);
    let mut s = ExtReal::ZERO;
    for m in 1..=terms {
        let t = ExtReal::from(m).powi(-(k as i32));
        s += if m % 2 == 1 { -t } else { t };
        partials.push(s);
    }
    let (value, est) = euler_transform(&partials[partials.len() - order - 1..]);
    Ok(SeriesResult { value, terms_used: terms as u64, tail_estimate: est })
}

/// Euler's constant from `H_N - ln N - 1/(2N) + 1/(12N^2) - 1/(120N^4)` at `N = 10^6`.
pub fn euler_gamma() -> ExtReal {
    static GAMMA: OnceLock<ExtReal> = OnceLock::new();
    *GAMMA.get_or_init(|| {
        const N: u32 = 1_000_000;
        let mut h = ExtReal::ZERO;
        for m in (1..=N).rev() {
            h += ExtReal::ONE / m as f64;
        }
        let n = ExtReal::from(N);
        let inv2 = n.sqr().recip();
        h - n.ln() - n.recip() * 0.5 + inv2 / 12.0 - inv2.sqr() / 120.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpreal::{decimal::parse_rational, PI};

    fn lit(s: &str) -> ExtReal {
        ExtReal::from_rational(&parse_rational(s).unwrap())
    }

    #[test]
    fn basel_and_apery() {
        let z2 = zeta(2).unwrap();
        assert!((z2 - PI.sqr() / 6.0).abs().to_f64() < 1e-31);
        let z3 = zeta(3).unwrap();
        assert!((z3 - lit("1.2020569031595942853997381615114499907649862923405")).abs().to_f64() < 1e-31);
        let z2_oracle = lit("1.6449340668482264364724151666460251892189499012068");
        assert!((z2 - z2_oracle).abs().to_f64() < 1e-31);
    }

    #[test]
    fn zeta_sixty_is_dominated_by_first_terms() {
        let z = zeta(60).unwrap();
        let approx = ExtReal::ONE + ExtReal::ONE.ldexp(-60) + ExtReal::from(3u32).powi(-60);
        assert!((z - approx).abs().to_f64() < 1e-34);
    }

    #[test]
    fn domain_errors() {
        assert!(zeta(1).is_err());
        assert!(zeta(61).is_err());
        assert!(zeta_bar(0).is_err());
        assert!(zeta_bar_direct(2, 4).is_err());
    }

    #[test]
    fn alternating_values() {
        let zb2 = zeta_bar(2).unwrap();
        assert!((zb2 + PI.sqr() / 12.0).abs().to_f64() < 1e-31);
        assert_eq!(zeta_bar(1).unwrap(), -LN2);
        let zb3 = zeta_bar(3).unwrap();
        assert!((zb3 + zeta(3).unwrap() * 0.75).abs().to_f64() < 1e-31);
    }

    #[test]
    fn regularized_conventions() {
        assert_eq!(zeta_reg(ZetaIndex::plain(0)).unwrap(), RegValue::finite(-ExtReal::HALF));
        assert_eq!(zeta_reg(ZetaIndex::barred(0)).unwrap(), RegValue::finite(-ExtReal::HALF));
        assert_eq!(zeta_reg(ZetaIndex::plain(1)).unwrap(), RegValue::T);
        assert_eq!(zeta_reg(ZetaIndex::barred(1)).unwrap(), RegValue::finite(-LN2));
        for k in 2..=MAX_WEIGHT {
            assert!(zeta_reg(ZetaIndex::plain(k)).unwrap().tcoef.is_zero());
            assert!(zeta_reg(ZetaIndex::barred(k)).unwrap().tcoef.is_zero());
        }
    }

    #[test]
    fn ring_rejects_t_squared() {
        assert_eq!(RegValue::T.try_mul(&RegValue::T), Err(Error::DivergentProduct));
        let two = RegValue::finite(ExtReal::from(2u32));
        assert_eq!(two.try_mul(&RegValue::T).unwrap().tcoef, ExtReal::from(2u32));
    }

    #[test]
    fn euler_maclaurin_consistency() {
        for k in 2..=MAX_WEIGHT {
            let a = zeta_em(k, 40, 20);
            let b = zeta_em(k, 80, 20);
            assert!(((a - b) / a).abs().to_f64() < 1e-30, "k = {k}");
        }
    }

    #[test]
    fn strictly_decreasing() {
        for k in 2..MAX_WEIGHT {
            let a = zeta(k).unwrap();
            let b = zeta(k + 1).unwrap();
            assert!(a > b && b > ExtReal::ONE);
        }
    }

    #[test]
    fn direct_alternating_matches_reduction() {
        let r = zeta_bar_direct(1, 64).unwrap();
        assert!((r.value + LN2).abs().to_f64() < 1e-15);
        for k in 2..=20 {
            let r = zeta_bar_direct(k, 64).unwrap();
            assert!((r.value - zeta_bar(k).unwrap()).abs().to_f64() < 1e-15, "k = {k}");
        }
    }

    #[test]
    fn direct_alternating_lies_between_partial_sums() {
        let terms = 64u32;
        let mut s = ExtReal::ZERO;
        let mut partials = vec![];
        for m in 1..=terms {
            let t = ExtReal::from(m).powi(-2);
            s += if m % 2 == 1 { -t } else { t };
            partials.push(s);
        }
        let v = zeta_bar_direct(2, terms).unwrap().value;
        let (a, b) = (partials[62], partials[63]);
        assert!(v > a.min(b) && v < a.max(b));
    }

    #[test]
    fn euler_constant() {
        let g = lit("0.57721566490153286060651209008240243104215933593992");
        assert!((euler_gamma() - g).abs().to_f64() < 1e-27);
    }
}
