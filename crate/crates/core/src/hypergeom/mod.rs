//! Generalized hypergeometric series `pFq[a; b; ±1]`: Pochhammer algebra,
//! convergence classes, exact and double-double evaluation.

mod gamma;
mod identities;

use std::fmt;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{domain, Error, Result};
use crate::hpreal::{bernoulli_poly, ExtReal, Rational};
use crate::series::{boole_tail, em_tail, euler_transform, rounding_floor, PowerLog, SeriesResult, TAIL_ORDER};

pub use gamma::{gamma_ratio, ln_gamma};
pub use identities::*;

/// Number field the parameters live in: exact rationals or double-double reals.
pub trait HypScalar: Clone + fmt::Debug + PartialEq {
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// `Some(n)` when the value equals `-n` for an integer `n >= 0`.
    fn nonpositive_integer(&self) -> Option<u64>;
    fn to_ext(&self) -> ExtReal;
}

impl HypScalar for ExtReal {
    fn from_i64(n: i64) -> Self {
        ExtReal::from_i64(n)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn div(&self, o: &Self) -> Self {
        *self / *o
    }
    fn nonpositive_integer(&self) -> Option<u64> {
        match self.to_integer() {
            Some(n) if n <= 0 => Some(n.unsigned_abs()),
            _ => None,
        }
    }
    fn to_ext(&self) -> ExtReal {
        *self
    }
}

impl HypScalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
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
    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !self.is_positive() {
            self.to_integer().abs().to_u64()
        } else {
            None
        }
    }
    fn to_ext(&self) -> ExtReal {
        ExtReal::from_rational(self)
    }
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`.
pub fn pochhammer<T: HypScalar>(x: &T, n: u64) -> T {
    let one = T::from_i64(1);
    let mut acc = one.clone();
    let mut f = x.clone();
    for _ in 0..n {
        acc = acc.mul(&f);
        f = f.add(&one);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Argument {
    PlusOne,
    MinusOne,
}

impl Argument {
    fn is_minus(&self) -> bool {
        matches!(self, Argument::MinusOne)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvClass {
    Absolute,
    Conditional,
    Divergent,
    Terminating,
}

/// `pFq[upper; lower; argument]` with `p = q + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypSpec<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
    pub argument: Argument,
}

impl<T: HypScalar> HypSpec<T> {
    /// Rejects wrong arity and lower parameters that hit a pole before the
    /// series terminates.
    pub fn new(upper: Vec<T>, lower: Vec<T>, argument: Argument) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return domain(format!(
                "hypergeometric series needs p = q + 1, got p = {}, q = {}",
                upper.len(),
                lower.len()
            ));
        }
        let spec = HypSpec { upper, lower, argument };
        let last = spec.last_index();
        for b in &spec.lower {
            if let Some(m) = b.nonpositive_integer() {
                if last.is_none_or(|n| n > m) {
                    return domain(format!("lower parameter {b:?} is a pole of the series"));
                }
            }
        }
        Ok(spec)
    }

    /// Index of the last non-zero term of a terminating series.
    pub fn last_index(&self) -> Option<u64> {
        self.upper.iter().filter_map(|a| a.nonpositive_integer()).min()
    }

    /// `sum lower - sum upper`.
    pub fn margin(&self) -> ExtReal {
        let s = |v: &[T]| v.iter().fold(ExtReal::ZERO, |acc, x| acc + x.to_ext());
        s(&self.lower) - s(&self.upper)
    }

    pub fn to_real(&self) -> HypSpec<ExtReal> {
        HypSpec {
            upper: self.upper.iter().map(|x| x.to_ext()).collect(),
            lower: self.lower.iter().map(|x| x.to_ext()).collect(),
            argument: self.argument,
        }
    }

    fn max_abs_param(&self) -> f64 {
        self.upper.iter().chain(&self.lower).map(|x| x.to_ext().abs().to_f64()).fold(0.0, f64::max)
    }

    /// `t_{n+1} / t_n` without the argument sign.
    fn ratio(&self, n: u64) -> T {
        let nn = T::from_i64(n as i64);
        let mut num = T::from_i64(1);
        for a in &self.upper {
            num = num.mul(&a.add(&nn));
        }
        let mut den = T::from_i64(n as i64 + 1);
        for b in &self.lower {
            den = den.mul(&b.add(&nn));
        }
        num.div(&den)
    }
}

pub fn classify<T: HypScalar>(spec: &HypSpec<T>) -> ConvClass {
    if spec.last_index().is_some() {
        return ConvClass::Terminating;
    }
    let m = spec.margin();
    match spec.argument {
        Argument::PlusOne if m > ExtReal::ZERO => ConvClass::Absolute,
        Argument::PlusOne => ConvClass::Divergent,
        Argument::MinusOne if m > ExtReal::ZERO => ConvClass::Absolute,
        Argument::MinusOne if m > -ExtReal::ONE => ConvClass::Conditional,
        Argument::MinusOne => ConvClass::Divergent,
    }
}

/// Exact sum of a terminating series.
pub fn eval_exact(spec: &HypSpec<Rational>) -> Result<Rational> {
    let Some(last) = spec.last_index() else {
        return domain("exact evaluation needs a terminating series");
    };
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for n in 0..last {
        term = term.mul(&spec.ratio(n));
        if spec.argument.is_minus() {
            term = -term;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Tail-acceleration strategy for non-terminating series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Iterated averaging of the partial sums (argument -1 only).
    EulerTransform,
    /// Direct sum plus a tail from the Stirling expansion of the terms.
    Asymptotic,
}

const EULER_ORDER: u64 = 32;
const STIRLING_ORDER: usize = 16;

/// Evaluates a convergent series. Terminating series are summed exactly.
pub fn eval(spec: &HypSpec<ExtReal>, cap: u64, tol: ExtReal) -> Result<SeriesResult> {
    match classify(spec) {
        ConvClass::Divergent => {
            return Err(Error::Divergent(format!(
                "series with parameter margin {} diverges at this argument",
                spec.margin()
            )))
        }
        ConvClass::Terminating => {
            let exact = HypSpec {
                upper: spec.upper.iter().map(|x| x.to_rational().expect("finite")).collect(),
                lower: spec.lower.iter().map(|x| x.to_rational().expect("finite")).collect(),
                argument: spec.argument,
            };
            let v = eval_exact(&exact)?;
            return Ok(SeriesResult {
                value: ExtReal::from_rational(&v),
                terms_used: spec.last_index().unwrap_or(0) + 1,
                tail_estimate: ExtReal::ZERO,
            });
        }
        _ => {}
    }
    let size = spec.max_abs_param();
    let (method, mut start) = match spec.argument {
        Argument::MinusOne => (Method::EulerTransform, (8.0 * size).max(64.0) as u64),
        Argument::PlusOne => (Method::Asymptotic, (16.0 * size).max(256.0) as u64),
    };
    let mut last: Option<SeriesResult> = None;
    loop {
        let n = start.min(cap);
        let r = eval_with(spec, method, n)?;
        if r.tail_estimate <= tol * r.value.abs().max(ExtReal::ONE) {
            return Ok(r);
        }
        // past this point rounding, not truncation, dominates the estimate
        let stalled = last.is_some_and(|p: SeriesResult| r.tail_estimate * 2.0 > p.tail_estimate);
        last = Some(r);
        if n >= cap || stalled {
            break;
        }
        start *= 2;
    }
    let r = last.expect("at least one attempt");
    Err(Error::Truncation { terms: r.terms_used, tail_estimate: r.tail_estimate.to_f64() })
}

/// Evaluates with an explicit method; `n` is the number of explicit terms
/// (the Euler transform then uses `EULER_ORDER` further partial sums).
pub fn eval_with(spec: &HypSpec<ExtReal>, method: Method, n: u64) -> Result<SeriesResult> {
    let class = classify(spec);
    if class == ConvClass::Divergent {
        return Err(Error::Divergent("series diverges at this argument".into()));
    }
    if class == ConvClass::Terminating {
        return eval(spec, u64::MAX, ExtReal::ONE);
    }
    let minus = spec.argument.is_minus();
    match method {
        Method::EulerTransform => {
            if !minus {
                return domain("the Euler transform applies to alternating series only");
            }
            let total = n + EULER_ORDER;
            let mut term = ExtReal::ONE;
            let mut sum = ExtReal::ZERO;
            let mut partials = Vec::with_capacity(EULER_ORDER as usize + 1);
            for k in 0..=total {
                sum += if k % 2 == 1 { -term } else { term };
                if k >= n {
                    partials.push(sum);
                }
                term *= spec.ratio(k);
            }
            let (value, est) = euler_transform(&partials);
            let est = est + rounding_floor(total, value.abs().max(ExtReal::ONE));
            Ok(SeriesResult { value, terms_used: total + 1, tail_estimate: est })
        }
        Method::Asymptotic => {
            if (n as f64) < 2.0 * spec.max_abs_param() + 20.0 {
                return domain("asymptotic tail needs more explicit terms than twice the largest parameter");
            }
            let mut term = ExtReal::ONE;
            let mut sum = ExtReal::ZERO;
            for k in 0..n {
                sum += if minus && k % 2 == 1 { -term } else { term };
                term *= spec.ratio(k);
            }
            let (tail, est) = asymptotic_tail(spec, n, term);
            let value = sum + tail;
            let est = est + rounding_floor(n, value.abs().max(ExtReal::ONE));
            Ok(SeriesResult { value, terms_used: n, tail_estimate: est })
        }
    }
}

/// `sum_{k>=n} (±1)^k t_k` given `t_n`, using
/// `t_k ~ C k^-σ exp(sum_m d_m k^-m)` with `σ = 1 + sum lower - sum upper` and
/// `d_m = (-1)^(m+1) [sum B_{m+1}(a) - sum B_{m+1}(b) - B_{m+1}(1)] / (m(m+1))`.
fn asymptotic_tail(spec: &HypSpec<ExtReal>, n: u64, t_n: ExtReal) -> (ExtReal, ExtReal) {
    if t_n.is_zero() {
        return (ExtReal::ZERO, ExtReal::ZERO);
    }
    let sigma = spec.margin() + 1.0;
    let j_max = STIRLING_ORDER;
    let mut d = vec![ExtReal::ZERO; j_max + 1];
    for (m, dm) in d.iter_mut().enumerate().skip(1) {
        let mut s = -bernoulli_poly(m + 1, ExtReal::ONE);
        for a in &spec.upper {
            s += bernoulli_poly(m + 1, *a);
        }
        for b in &spec.lower {
            s -= bernoulli_poly(m + 1, *b);
        }
        s /= (m * (m + 1)) as f64;
        *dm = if m % 2 == 1 { s } else { -s };
    }
    let mut e = vec![ExtReal::ONE; j_max + 1];
    for j in 1..=j_max {
        let mut acc = ExtReal::ZERO;
        for m in 1..=j {
            acc += d[m] * e[j - m] * m as f64;
        }
        e[j] = acc / j as f64;
    }
    let nn = ExtReal::from(n);
    let inv = nn.recip();
    let mut series_at_n = ExtReal::ZERO;
    for j in (0..=j_max).rev() {
        series_at_n = series_at_n * inv + e[j];
    }
    let c = t_n * nn.powf(sigma) / series_at_n;
    let minus = spec.argument.is_minus();
    let mut tail = ExtReal::ZERO;
    let mut est = ExtReal::ZERO;
    for (j, ej) in e.iter().enumerate() {
        let f = PowerLog::power(sigma + j as f64);
        let (z, last) = if minus { boole_tail(f, n - 1, TAIL_ORDER) } else { em_tail(f, n - 1, TAIL_ORDER) };
        tail += *ej * z;
        est += (*ej * last).abs();
        if j == j_max {
            est += (*ej * z).abs();
        }
    }
    (c * tail, (c * est).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpreal::PI;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn x(v: f64) -> ExtReal {
        ExtReal::from_f64(v)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(1, 1), 5), q(120, 1));
        assert_eq!(pochhammer(&q(-3, 1), 5), q(0, 1));
        assert_eq!(pochhammer(&q(1, 2), 3), q(15, 8));
        assert_eq!(pochhammer(&q(7, 3), 0), q(1, 1));
        assert_eq!(pochhammer(&x(1.0), 6), x(720.0));
    }

    #[test]
    fn classification() {
        let s = HypSpec::new(vec![x(1.0), x(1.0)], vec![x(3.0)], Argument::PlusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Absolute);
        let s = HypSpec::new(vec![x(1.0), x(1.0)], vec![x(2.0)], Argument::PlusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Divergent);
        let s = HypSpec::new(vec![x(1.0), x(1.0)], vec![x(2.0)], Argument::MinusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Conditional);
        let s = HypSpec::new(vec![x(1.0), x(1.2)], vec![x(1.5)], Argument::MinusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Conditional);
        let s = HypSpec::new(vec![x(1.0), x(1.5)], vec![x(1.5)], Argument::MinusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Divergent);
        let s = HypSpec::new(vec![x(2.0), x(1.0)], vec![x(2.0)], Argument::MinusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Divergent);
        let s = HypSpec::new(vec![x(1.0), x(-4.0), x(2.0)], vec![x(3.0), x(0.5)], Argument::PlusOne).unwrap();
        assert_eq!(classify(&s), ConvClass::Terminating);
    }

    #[test]
    fn invalid_specs() {
        assert!(HypSpec::new(vec![x(1.0)], vec![x(1.0)], Argument::PlusOne).is_err());
        assert!(HypSpec::new(vec![x(1.0), x(1.0)], vec![x(-2.0)], Argument::PlusOne).is_err());
        // the pole sits beyond the last term
        assert!(HypSpec::new(vec![x(-2.0), x(1.0)], vec![x(-3.0)], Argument::PlusOne).is_ok());
    }

    #[test]
    fn telescoping_sum() {
        let s = HypSpec::new(vec![x(1.0), x(1.0)], vec![x(3.0)], Argument::PlusOne).unwrap();
        let r = eval(&s, 100_000, x(1e-25)).unwrap();
        assert!((r.value - 2.0).abs().to_f64() < 1e-20);
        assert!(eval(&HypSpec::new(vec![x(1.0), x(1.0)], vec![x(2.0)], Argument::PlusOne).unwrap(), 1000, x(1e-20)).is_err());
    }

    #[test]
    fn leibniz_series() {
        let s = HypSpec::new(vec![x(1.0), x(0.5)], vec![x(1.5)], Argument::MinusOne).unwrap();
        let r = eval(&s, 100_000, x(1e-25)).unwrap();
        assert!((r.value - PI * 0.25).abs().to_f64() < 1e-20);
        let b = eval_with(&s, Method::Asymptotic, 200).unwrap();
        assert!((b.value - PI * 0.25).abs().to_f64() < 1e-28);
    }

    #[test]
    fn exact_terminating() {
        // a=1, b=2, c=5, n=1
        let s = HypSpec::new(vec![q(1, 1), q(2, 1), q(-1, 1)], vec![q(5, 1), q(-1, 1)], Argument::PlusOne);
        assert!(s.is_ok());
        let v = eval_exact(&s.unwrap()).unwrap();
        assert_eq!(v, q(7, 5));
        let s = HypSpec::new(vec![q(1, 1), q(2, 1), q(-1, 1)], vec![q(5, 1), q(-2, 1)], Argument::PlusOne).unwrap();
        assert_eq!(eval_exact(&s).unwrap(), q(6, 5));
    }

    #[test]
    fn doubling_cap_changes_little() {
        let s = HypSpec::new(vec![x(0.5), x(0.5)], vec![x(2.0)], Argument::PlusOne).unwrap();
        let a = eval_with(&s, Method::Asymptotic, 300).unwrap();
        let b = eval_with(&s, Method::Asymptotic, 600).unwrap();
        assert!((a.value - b.value).abs() <= a.tail_estimate.max(x(1e-30)) * 3.0);
        let s = HypSpec::new(vec![x(2.0), x(0.5)], vec![x(2.5)], Argument::MinusOne).unwrap();
        let a = eval_with(&s, Method::EulerTransform, 64).unwrap();
        let b = eval_with(&s, Method::EulerTransform, 128).unwrap();
        assert!((a.value - b.value).abs() <= a.tail_estimate.max(x(1e-30)) * 3.0);
    }

    #[test]
    fn alternating_backends_agree() {
        let s = HypSpec::new(
            vec![x(2.0), x(2.0), x(0.5), x(0.25)],
            vec![x(1.0), x(2.5), x(2.75)],
            Argument::MinusOne,
        )
        .unwrap();
        let a = eval_with(&s, Method::EulerTransform, 64).unwrap();
        let b = eval_with(&s, Method::Asymptotic, 300).unwrap();
        assert!((a.value - b.value).abs().to_f64() < 1e-24);
    }
}
