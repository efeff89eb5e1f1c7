//! The values `H(a,b) = ζ(2,...,2,3,2,...,2)` (a twos inside the 3, b twos
//! outside) and their star versions: direct nested sums, closed forms in
//! single zeta values, and the derived identities.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::euler_sums::{closed, double_direct, DoubleIndex};
use crate::hpreal::{bernoulli_over_factorial, binom, ExtReal, PI};
use crate::hypergeom::mixed_ratio_series;
use crate::series::{rounding_floor, SeriesResult};
use crate::zeta::{zeta, zeta_bar};

/// Largest `a + b` accepted by the direct nested sums.
pub const MAX_DIRECT_AB: u32 = 8;
/// Largest `K = a + b + 1` accepted by the closed forms.
pub const MAX_CLOSED_K: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HIndex {
    pub a: u32,
    pub b: u32,
    pub star: bool,
}

impl HIndex {
    pub const fn new(a: u32, b: u32, star: bool) -> Self {
        HIndex { a, b, star }
    }

    /// `K = a + b + 1`.
    pub fn k(&self) -> u32 {
        self.a + self.b + 1
    }

    /// Exponents read from the innermost summation index outwards.
    pub fn exponents(&self) -> Vec<u32> {
        let mut e = vec![2; self.a as usize];
        e.push(3);
        e.extend(std::iter::repeat_n(2, self.b as usize));
        e
    }
}

impl fmt::Display for HIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}({},{})", if self.star { "*" } else { "" }, self.a, self.b)
    }
}

/// `H(a) = π^2a / (2a+1)!` and `H*(a) = -2 ζ(~2a)`, both 1 at `a = 0`.
pub fn h_single(a: u32, star: bool) -> Result<ExtReal> {
    if a > MAX_CLOSED_K {
        return domain(format!("H({a}) needs a <= {MAX_CLOSED_K}"));
    }
    if a == 0 {
        return Ok(ExtReal::ONE);
    }
    if star {
        return Ok(zeta_bar(2 * a)? * -2.0);
    }
    let mut fact = ExtReal::ONE;
    for i in 2..=(2 * a + 1) {
        fact *= i as f64;
    }
    Ok(PI.sqr().powi(a as i32) / fact)
}

/// Number of powers of `1/n` kept in the tail expansions.
const TAIL_POWERS: usize = 64;
const TAIL_BERNOULLI: usize = 12;

/// Expansion of `sum_{m>=n} m^-q` in powers of `1/n`, added into `out` times `c`.
fn add_power_tail(out: &mut [ExtReal], q: usize, c: ExtReal, star: bool) {
    let p = out.len() - 1;
    if q - 1 <= p {
        out[q - 1] += c / (q - 1) as f64;
    }
    if q <= p {
        // +1/2 n^-q for m >= n, -1/2 n^-q for m > n
        out[q] += if star { -(c * 0.5) } else { c * 0.5 };
    }
    // B_2i/(2i)! (q)_{2i-1} n^{-q-2i+1}
    let mut rising = ExtReal::from(q as u32);
    for i in 1..=TAIL_BERNOULLI {
        let pow = q + 2 * i - 1;
        if pow > p {
            break;
        }
        out[pow] += c * bernoulli_over_factorial(2 * i) * rising;
        rising = rising * (q + 2 * i - 1) as f64 * (q + 2 * i) as f64;
    }
}

fn eval_series(coef: &[ExtReal], n: ExtReal) -> ExtReal {
    let inv = n.recip();
    coef.iter().rev().fold(ExtReal::ZERO, |acc, &c| acc * inv + c)
}

/// Multiple zeta value (or star value) with the given exponents, innermost
/// first. Prefix sums are rolled forward to `n_max`; the remainder of every
/// level is expanded in powers of `1/n` and propagated outwards.
pub fn nested_direct(exponents: &[u32], star: bool, n_max: u64) -> Result<SeriesResult> {
    if exponents.is_empty() || exponents.len() > MAX_DIRECT_AB as usize + 1 {
        return domain(format!("nested sum depth must be 1..={}", MAX_DIRECT_AB + 1));
    }
    if exponents.iter().any(|&e| e < 2) {
        return domain("nested sums need every exponent >= 2");
    }
    if n_max < 100 {
        return domain("nested sums need n_max >= 100");
    }
    let d = exponents.len();
    let mut level = vec![ExtReal::ZERO; d + 1];
    level[0] = ExtReal::ONE;
    for m in 1..=n_max {
        let x = ExtReal::from(m);
        let inv = x.recip();
        let inv2 = inv.sqr();
        let pw = |e: u32| match e {
            2 => inv2,
            3 => inv2 * inv,
            _ => inv.powi(e as i32),
        };
        if star {
            for j in 1..=d {
                let add = level[j - 1] * pw(exponents[j - 1]);
                level[j] += add;
            }
        } else {
            for j in (1..=d).rev() {
                let add = level[j - 1] * pw(exponents[j - 1]);
                level[j] += add;
            }
        }
    }
    // strict: remainder_j(n) = sum_{m>=n} m^-e (L_{j-1} - remainder_{j-1}(m)), read at n_max + 1
    // star:   remainder_j(n) = sum_{m>n}  m^-e (L_{j-1} - remainder_{j-1}(m)), read at n_max
    let at = ExtReal::from(if star { n_max } else { n_max + 1 });
    let mut prev_tail = vec![ExtReal::ZERO; TAIL_POWERS + 1];
    let mut prev_limit = ExtReal::ONE;
    let mut est = ExtReal::ZERO;
    for j in 1..=d {
        let e = exponents[j - 1] as usize;
        let mut tail = vec![ExtReal::ZERO; TAIL_POWERS + 1];
        add_power_tail(&mut tail, e, prev_limit, star);
        for (i, &t) in prev_tail.iter().enumerate() {
            if !t.is_zero() && e + i <= TAIL_POWERS {
                add_power_tail(&mut tail, e + i, -t, star);
            }
        }
        let rem = eval_series(&tail, at);
        prev_limit = level[j] + rem;
        est = (tail[TAIL_POWERS] * at.powi(-(TAIL_POWERS as i32))).abs();
        prev_tail = tail;
    }
    let est = est + rounding_floor(n_max * d as u64, prev_limit);
    Ok(SeriesResult { value: prev_limit, terms_used: n_max, tail_estimate: est })
}

/// `H(a,b)` or `H*(a,b)` by direct nested summation.
pub fn h_direct(idx: HIndex, n_max: u64) -> Result<SeriesResult> {
    if idx.a + idx.b > MAX_DIRECT_AB {
        return domain(format!("{idx}: direct evaluation needs a + b <= {MAX_DIRECT_AB}"));
    }
    nested_direct(&idx.exponents(), idx.star, n_max)
}

fn check_closed_k(a: u32, b: u32) -> Result<u32> {
    let k = a + b + 1;
    if k > MAX_CLOSED_K {
        return domain(format!("closed form needs a + b + 1 <= {MAX_CLOSED_K}"));
    }
    Ok(k)
}

fn c(n: u32, k: u32) -> Result<f64> {
    Ok(binom(n as i64, k as i64)? as f64)
}

/// `H(a,b) = 2 sum_{r=1}^K (-1)^r [C(2r,2a+2) ζ(2r+1) + C(2r,2b+1) ζ(~(2r+1))] H(K-r)`.
pub fn h_closed(a: u32, b: u32) -> Result<ExtReal> {
    let k = check_closed_k(a, b)?;
    let mut s = ExtReal::ZERO;
    for r in 1..=k {
        let inner = zeta(2 * r + 1)? * c(2 * r, 2 * a + 2)? + zeta_bar(2 * r + 1)? * c(2 * r, 2 * b + 1)?;
        let t = inner * h_single(k - r, false)?;
        s += if r % 2 == 1 { -t } else { t };
    }
    Ok(s * 2.0)
}

/// `H*(a,b) = -2 sum_{r=1}^K [(C(2r,2a) - δ_{r,a}) ζ(2r+1) + C(2r,2b+1) ζ(~(2r+1))] H*(K-r)`.
pub fn hstar_closed(a: u32, b: u32) -> Result<ExtReal> {
    let k = check_closed_k(a, b)?;
    let mut s = ExtReal::ZERO;
    for r in 1..=k {
        let delta = if r == a { 1.0 } else { 0.0 };
        let inner = zeta(2 * r + 1)? * (c(2 * r, 2 * a)? - delta) + zeta_bar(2 * r + 1)? * c(2 * r, 2 * b + 1)?;
        s += inner * h_single(k - r, true)?;
    }
    Ok(s * -2.0)
}

/// How the alternating double sum in the Euler-sum form of `H*(a,b)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerSumRoute {
    Direct(u64),
    Closed,
}

/// `H*(a,b) = -4 ζ(2a+1, ~(2b+2)) - 2 ζ(~(2a+2b+3))`.
pub fn hstar_via_euler_sum(a: u32, b: u32, route: EulerSumRoute) -> Result<SeriesResult> {
    check_closed_k(a, b)?;
    let idx = DoubleIndex::new(2 * a + 1, 2 * b + 2, false, true);
    let (double, est, terms) = match route {
        EulerSumRoute::Direct(n) => {
            let r = double_direct(idx, n)?;
            (r.value, r.tail_estimate, r.terms_used)
        }
        EulerSumRoute::Closed => {
            let (v, _) = closed(idx)?;
            if !v.is_convergent() {
                return Err(Error::Divergent(format!("{idx} has a T-part")));
            }
            (v.finite, ExtReal::ZERO, 0)
        }
    };
    let value = double * -4.0 - zeta_bar(2 * a + 2 * b + 3)? * 2.0;
    Ok(SeriesResult { value, terms_used: terms, tail_estimate: est * 4.0 })
}

/// Residuals of `sum_{a+b=K-1} H(a,b) = sum_r (-1)^{r-1} H(K-r) ζ(2r+1)` and
/// `sum_{a+b=K-1} H*(a,b) = sum_r H*(K-r) ζ(2r+1)`.
pub fn sum_identities(k: u32) -> Result<(ExtReal, ExtReal)> {
    if k == 0 || k > MAX_CLOSED_K {
        return domain(format!("sum identities need 1 <= K <= {MAX_CLOSED_K}"));
    }
    let mut h = ExtReal::ZERO;
    let mut hs = ExtReal::ZERO;
    for a in 0..k {
        h += h_closed(a, k - 1 - a)?;
        hs += hstar_closed(a, k - 1 - a)?;
    }
    for r in 1..=k {
        let z = zeta(2 * r + 1)?;
        let t = h_single(k - r, false)? * z;
        h -= if r % 2 == 1 { t } else { -t };
        hs -= h_single(k - r, true)? * z;
    }
    Ok((h, hs))
}

/// `-(1/2K) sum_{a+b=K-1} (1 + δ_{a,0}/2) H*(a,b)`, which equals `ζ(~(2K+1))`.
pub fn zeta_bar_odd_from_hstar(k: u32) -> Result<ExtReal> {
    if k == 0 || k > MAX_CLOSED_K {
        return domain(format!("needs 1 <= K <= {MAX_CLOSED_K}"));
    }
    let mut s = ExtReal::ZERO;
    for a in 0..k {
        let w = if a == 0 { 1.5 } else { 1.0 };
        s += hstar_closed(a, k - 1 - a)? * w;
    }
    Ok(-s / (2 * k) as f64)
}

/// `(1/4K) sum_{a+b=K-1} (1 + δ_{a,0}/2 - K δ_{a,r}) H*(a,b)` with `K = r + s`,
/// which equals `ζ(2r+1, ~2s)`.
pub fn zeta_from_hstar(r: u32, s: u32) -> Result<ExtReal> {
    let k = r + s;
    if s == 0 || k > MAX_CLOSED_K {
        return domain(format!("needs s >= 1 and r + s <= {MAX_CLOSED_K}"));
    }
    let mut acc = ExtReal::ZERO;
    for a in 0..k {
        let mut w = if a == 0 { 1.5 } else { 1.0 };
        if a == r {
            w -= k as f64;
        }
        acc += hstar_closed(a, k - 1 - a)? * w;
    }
    Ok(acc / (4 * k) as f64)
}

fn check_small(x: ExtReal, y: ExtReal) -> Result<()> {
    if x.abs() > ExtReal::HALF || y.abs() > ExtReal::HALF {
        return domain("generating functions are evaluated for |x|, |y| <= 1/2 only");
    }
    Ok(())
}

/// `F(x,y) = (sin πy / πy) sum_{m>=1} (x)_m (-x)_m / (m (1+y)_m (1-y)_m)`,
/// the generating function `sum (-1)^{a+b+1} H(a,b) x^{2a+2} y^{2b}`.
pub fn eval_f(x: ExtReal, y: ExtReal) -> Result<ExtReal> {
    check_small(x, y)?;
    Ok(y.sinc_pi() * mixed_ratio_series(x, y)?.value)
}

/// `F*(x,y) = -(πy / sin πy) sum_{m>=1} (y)_m (-y)_m / (m (1+x)_m (1-x)_m)`.
pub fn eval_fstar(x: ExtReal, y: ExtReal) -> Result<ExtReal> {
    check_small(x, y)?;
    Ok(-mixed_ratio_series(y, x)?.value / y.sinc_pi())
}
