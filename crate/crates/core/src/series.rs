//! Shared summation machinery: Euler transform, Euler–Maclaurin and Boole tails.

use crate::hpreal::{bernoulli_over_factorial, ExtReal, EPS};

/// Value of a truncated series with the number of explicit terms and a
/// heuristic absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: ExtReal,
    pub terms_used: u64,
    pub tail_estimate: ExtReal,
}

/// Two evaluations of the same quantity and an error budget for their difference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub bound: ExtReal,
}

impl Comparison {
    pub fn new(lhs: ExtReal, rhs: ExtReal, bound: ExtReal) -> Self {
        Comparison { lhs, rhs, bound }
    }

    pub fn residual(&self) -> ExtReal {
        self.lhs - self.rhs
    }

    pub fn within(&self, tol: f64) -> bool {
        self.residual().abs().to_f64() <= tol
    }
}

/// Rounding floor for a sum of `n` double-double terms of size about `scale`.
pub fn rounding_floor(n: u64, scale: ExtReal) -> ExtReal {
    scale.abs() * (n as f64 * EPS)
}

/// Repeated averaging of consecutive partial sums. Returns the fully averaged
/// value and half the spread of the last two averages as an error estimate.
pub fn euler_transform(partials: &[ExtReal]) -> (ExtReal, ExtReal) {
    match partials.len() {
        0 => return (ExtReal::ZERO, ExtReal::ZERO),
        1 => return (partials[0], ExtReal::ZERO),
        _ => {}
    }
    let mut level = partials.to_vec();
    while level.len() > 2 {
        level = level.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    ((level[0] + level[1]) * 0.5, (level[1] - level[0]).abs() * 0.5)
}

/// `f(x) = x^-p`, optionally times `ln x`, with derivatives
/// `f^(n)(x) = (-1)^n (p)_n x^(-p-n) [ln x - sum_{i<n} 1/(p+i)]`.
#[derive(Clone, Copy, Debug)]
pub struct PowerLog {
    pub p: ExtReal,
    pub log: bool,
}

impl PowerLog {
    pub fn power(p: ExtReal) -> Self {
        PowerLog { p, log: false }
    }

    pub fn power_int(p: u32) -> Self {
        PowerLog { p: ExtReal::from(p), log: false }
    }

    /// `f^(0..=max)(x)`.
    fn derivatives(&self, x: ExtReal, max: usize) -> Vec<ExtReal> {
        let xp = x.powf(-self.p);
        let inv = x.recip();
        let lnx = if self.log { x.ln() } else { ExtReal::ZERO };
        let mut out = Vec::with_capacity(max + 1);
        let mut base = xp;
        let mut h = ExtReal::ZERO;
        for n in 0..=max {
            if n > 0 {
                let pn = self.p + (n - 1) as f64;
                base = -(base * pn * inv);
                h += pn.recip();
            }
            out.push(if self.log { base * (lnx - h) } else { base });
        }
        out
    }

    fn integral_from(&self, n: ExtReal) -> ExtReal {
        let pm1 = self.p - 1.0;
        let base = n.powf(ExtReal::ONE - self.p);
        if self.log {
            base * (n.ln() / pm1 + pm1.sqr().recip())
        } else {
            base / pm1
        }
    }
}

/// Number of Bernoulli corrections used in the asymptotic tails.
pub const TAIL_ORDER: usize = 10;

/// `sum_{m>n} f(m)` by Euler–Maclaurin (`p > 1`). Returns the value and the
/// magnitude of the last correction included.
pub fn em_tail(f: PowerLog, n: u64, order: usize) -> (ExtReal, ExtReal) {
    let x = ExtReal::from(n);
    let d = f.derivatives(x, 2 * order);
    let mut v = f.integral_from(x) - d[0] * 0.5;
    let mut last = d[0].abs() * 0.5;
    for i in 1..=order {
        let c = bernoulli_over_factorial(2 * i) * d[2 * i - 1];
        v -= c;
        last = c.abs();
    }
    (v, last)
}

/// `sum_{m>n} (-1)^m f(m)` from the Boole expansion
/// `sum_{j>=0} (-1)^j f(x+j) = f(x)/2 - sum_k (4^k-1) B_2k/(2k)! f^(2k-1)(x)`.
pub fn boole_tail(f: PowerLog, n: u64, order: usize) -> (ExtReal, ExtReal) {
    let x = ExtReal::from(n + 1);
    let d = f.derivatives(x, 2 * order);
    let mut v = d[0] * 0.5;
    let mut last = v.abs();
    let mut four = 1.0f64;
    for k in 1..=order {
        four *= 4.0;
        let c = bernoulli_over_factorial(2 * k) * d[2 * k - 1] * (four - 1.0);
        v -= c;
        last = c.abs();
    }
    if n % 2 == 0 {
        v = -v;
    }
    (v, last)
}
