//! Summation identities for `pFq` at `±1`, each returned as a comparison of
//! the series side with its closed form.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{eval, gamma_ratio, pochhammer, Argument, HypScalar as _, HypSpec};
use crate::error::{domain, Result};
use crate::hpreal::{ExtReal, Rational, EPS};
use crate::series::{em_tail, Comparison, PowerLog, SeriesResult, TAIL_ORDER};
use crate::zeta::zeta;

const CAP: u64 = 1 << 22;

fn tight() -> ExtReal {
    ExtReal::from_f64(1e-26)
}

fn gamma_rounding(v: ExtReal) -> ExtReal {
    v.abs() * (64.0 * EPS)
}

fn is_pole(x: ExtReal) -> bool {
    x.nonpositive_integer().is_some()
}

/// `2F1(a,b;c;1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
pub fn check_gauss(a: ExtReal, b: ExtReal, c: ExtReal) -> Result<Comparison> {
    if c - a - b <= ExtReal::ZERO || is_pole(c) {
        return domain("Gauss sum needs c - a - b > 0 and c off the poles");
    }
    let lhs = eval(&HypSpec::new(vec![a, b], vec![c], Argument::PlusOne)?, CAP, tight())?;
    let rhs = gamma_ratio(&[c, c - a - b], &[c - a, c - b])?;
    Ok(Comparison::new(lhs.value, rhs, lhs.tail_estimate + gamma_rounding(rhs)))
}

/// Terminating balanced `3F2[a, b, -n; c, 1+a+b-c-n; 1] = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n)`,
/// returned as the exact residual.
pub fn check_saalschutz(a: &Rational, b: &Rational, c: &Rational, n: u32) -> Result<Rational> {
    let one = Rational::one();
    let nn = Rational::from_integer(n.into());
    let spec = HypSpec::new(
        vec![a.clone(), b.clone(), -nn.clone()],
        vec![c.clone(), &one + a + b - c - &nn],
        Argument::PlusOne,
    )?;
    let den = pochhammer(c, n as u64) * pochhammer(&(c - a - b), n as u64);
    if den.is_zero() {
        return domain("Saalschütz closed form has a vanishing denominator");
    }
    let rhs = pochhammer(&(c - a), n as u64) * pochhammer(&(c - b), n as u64) / den;
    Ok(super::eval_exact(&spec)? - rhs)
}

/// `(b)_n (c)_n / ((1+a-b)_n (1+a-c)_n) = 3F2[a+n, 1+a-b-c, -n; 1+a-b, 1+a-c; 1]`,
/// returned as the exact residual.
pub fn check_ratio_expansion(a: &Rational, b: &Rational, c: &Rational, n: u32) -> Result<Rational> {
    let one = Rational::one();
    let nn = Rational::from_integer(n.into());
    let beta = &one + a - b;
    let gamma = &one + a - c;
    let den = pochhammer(&beta, n as u64) * pochhammer(&gamma, n as u64);
    if den.is_zero() {
        return domain("ratio expansion has a vanishing denominator");
    }
    let lhs = pochhammer(b, n as u64) * pochhammer(c, n as u64) / den;
    let spec = HypSpec::new(vec![a + &nn, &one + a - b - c, -nn], vec![beta, gamma], Argument::PlusOne)?;
    Ok(lhs - super::eval_exact(&spec)?)
}

/// `2F1(a,b;1+a-b;-1) = ½ Γ(a/2)Γ(1+a-b) / (Γ(a)Γ(1+a/2-b))`.
pub fn check_kummer_type(a: ExtReal, b: ExtReal) -> Result<Comparison> {
    let lower = ExtReal::ONE + a - b;
    if b >= ExtReal::ONE || is_pole(lower) {
        return domain("alternating Kummer sum needs b < 1 and 1 + a - b off the poles");
    }
    let lhs = eval(&HypSpec::new(vec![a, b], vec![lower], Argument::MinusOne)?, CAP, tight())?;
    let half_a = a * 0.5;
    let rhs = gamma_ratio(&[half_a, lower], &[a, half_a + 1.0 - b])? * 0.5;
    Ok(Comparison::new(lhs.value, rhs, lhs.tail_estimate + gamma_rounding(rhs)))
}

/// Upper and lower parameters of the very-well-poised series
/// `[a, 1+a/2, b_1, c_1, ...; a/2, 1+a-b_1, 1+a-c_1, ...; -1]`.
fn well_poised_spec(a: ExtReal, bs: &[ExtReal], cs: &[ExtReal]) -> Result<HypSpec<ExtReal>> {
    let mut upper = vec![a, a * 0.5 + 1.0];
    let mut lower = vec![a * 0.5];
    for (&b, &c) in bs.iter().zip(cs) {
        upper.extend([b, c]);
        lower.extend([a + 1.0 - b, a + 1.0 - c]);
    }
    if lower.iter().any(|&x| is_pole(x)) {
        return domain("a lower parameter of the well-poised series is a pole");
    }
    HypSpec::new(upper, lower, Argument::MinusOne)
}

/// `Γ(1+a-b)Γ(1+a-c) / (Γ(1+a)Γ(1+a-b-c))`.
fn well_poised_gamma(a: ExtReal, b: ExtReal, c: ExtReal) -> Result<ExtReal> {
    let one = ExtReal::ONE;
    gamma_ratio(&[one + a - b, one + a - c], &[one + a, one + a - b - c])
}

/// `4F3[a, 1+a/2, b, c; a/2, 1+a-b, 1+a-c; -1] = Γ(1+a-b)Γ(1+a-c) / (Γ(1+a)Γ(1+a-b-c))`.
pub fn check_dougall_limit(a: ExtReal, b: ExtReal, c: ExtReal) -> Result<Comparison> {
    if ExtReal::from(2u32) + a - b * 2.0 - c * 2.0 <= ExtReal::ZERO {
        return domain("Dougall limit needs 2 + a - 2b - 2c > 0");
    }
    check_nested_dougall(a, &[b], &[c], ExtReal::from_f64(1e-12))
}

struct Nested {
    s: usize,
    a: ExtReal,
    bs: Vec<ExtReal>,
    cs: Vec<ExtReal>,
    tol: ExtReal,
}

impl Nested {
    fn alpha(&self, j: usize) -> ExtReal {
        self.a + 1.0 - self.bs[j - 1] - self.cs[j - 1]
    }
    fn beta(&self, j: usize) -> ExtReal {
        self.a + 1.0 - self.bs[j - 1]
    }
    fn gamma(&self, j: usize) -> ExtReal {
        self.a + 1.0 - self.cs[j - 1]
    }
    fn mu(&self, j: usize) -> ExtReal {
        self.bs[j] + self.cs[j] - self.beta(j) - self.gamma(j)
    }
    /// Growth exponent of level `j` in its shift `K`.
    fn theta(&self, j: usize) -> ExtReal {
        if j > self.s {
            ExtReal::ZERO
        } else {
            self.alpha(j) + self.mu(j) + self.theta(j + 1)
        }
    }

    /// `(b_{j+1})_L (c_{j+1})_L / ((β_j)_L (γ_j)_L)` advanced from `L` to `L+1`.
    fn p_step(&self, j: usize, l: u64) -> ExtReal {
        let l = ExtReal::from(l);
        (self.bs[j] + l) * (self.cs[j] + l) / ((self.beta(j) + l) * (self.gamma(j) + l))
    }

    fn p_at(&self, j: usize, l: u64) -> ExtReal {
        (0..l).fold(ExtReal::ONE, |acc, i| acc * self.p_step(j, i))
    }

    /// Value and error estimate of level `j` at shift `k0`.
    fn level(&self, j: usize, k0: u64) -> Result<(ExtReal, ExtReal)> {
        let kk = ExtReal::from(k0);
        if j == self.s {
            let spec = HypSpec::new(
                vec![self.alpha(j), self.bs[j] + kk, self.cs[j] + kk],
                vec![self.beta(j) + kk, self.gamma(j) + kk],
                Argument::PlusOne,
            )?;
            let r = eval(&spec, CAP, ExtReal::from_f64(1e-24))?;
            let p = self.p_at(j, k0);
            return Ok((p * r.value, (p * r.tail_estimate).abs()));
        }
        let decay = ExtReal::ONE - self.theta(j);
        if decay <= ExtReal::ONE {
            return domain("nested sum does not converge for these parameters");
        }
        let alpha = self.alpha(j);
        let mut weight = self.p_at(j, k0);
        let mut partial = Vec::new();
        let mut sum = ExtReal::ZERO;
        let mut err = ExtReal::ZERO;
        let mut k = 0u64;
        let mut m = 64u64;
        loop {
            while k <= m {
                let (v, e) = self.level(j + 1, k0 + k)?;
                sum += weight * v;
                err += (weight * e).abs();
                partial.push((sum, weight * v));
                let kf = ExtReal::from(k);
                weight = weight * (alpha + kf) / (kf + 1.0) * self.p_step(j, k0 + k);
                k += 1;
            }
            let tail_at = |n: u64| {
                let (s, t) = partial[n as usize];
                let (z, _) = em_tail(PowerLog::power(decay), n, TAIL_ORDER);
                s + t * ExtReal::from(n).powf(decay) * z
            };
            let full = tail_at(m);
            let half = tail_at(m / 2);
            // remaining error of the power-law tail falls off one order faster
            let r = ExtReal::from(2u32).powf(decay);
            let value = (full * r - half) / (r - 1.0);
            let est = (full - half).abs() / (r - 1.0) + err;
            if est < self.tol || m >= (1 << 14) {
                return Ok((value, est));
            }
            m *= 2;
        }
    }
}

/// `(2s+4)F(2s+3)` very-well-poised series at `-1` against the Γ-prefactor times
/// the `s`-fold sum
/// `Σ Π_j (α_j)_{k_j}/k_j! · (b_{j+1})_{K_j}(c_{j+1})_{K_j} / ((β_j)_{K_j}(γ_j)_{K_j})`
/// with `α_j = 1+a-b_j-c_j`, `β_j = 1+a-b_j`, `γ_j = 1+a-c_j`, `K_j = k_1+...+k_j`.
/// `bs` and `cs` hold `s + 1` entries; `s = 0` is the Dougall limit.
pub fn check_nested_dougall(a: ExtReal, bs: &[ExtReal], cs: &[ExtReal], tol: ExtReal) -> Result<Comparison> {
    if bs.is_empty() || bs.len() != cs.len() {
        return domain("nested Dougall sum needs equally many b and c parameters, at least one");
    }
    let s = bs.len() - 1;
    let spec = well_poised_spec(a, bs, cs)?;
    let lhs = eval(&spec, CAP, tight())?;
    let pref = well_poised_gamma(a, bs[s], cs[s])?;
    let (nested, est) = if s == 0 {
        (ExtReal::ONE, ExtReal::ZERO)
    } else {
        let ctx = Nested { s, a, bs: bs.to_vec(), cs: cs.to_vec(), tol };
        for j in 1..=s {
            if ctx.alpha(j) <= ExtReal::ZERO || is_pole(ctx.beta(j)) || is_pole(ctx.gamma(j)) {
                return domain("nested Dougall sum needs 1 + a > b_j + c_j and β_j, γ_j off the poles");
            }
        }
        ctx.level(1, 0)?
    };
    let rhs = pref * nested;
    Ok(Comparison::new(lhs.value, rhs, lhs.tail_estimate + (pref * est).abs() + gamma_rounding(rhs)))
}

/// `Σ_{m>=1} (x)_m (-x)_m / (m (1+y)_m (1-y)_m)` as `t_1 · 4F3[1+x, 1-x, 1, 1; 2+y, 2-y, 2; 1]`.
pub fn mixed_ratio_series(x: ExtReal, y: ExtReal) -> Result<SeriesResult> {
    let one = ExtReal::ONE;
    if is_pole(one + y) || is_pole(one - y) {
        return domain("1 ± y must avoid the poles");
    }
    let t1 = -(x.sqr()) / ((one + y) * (one - y));
    if x.is_zero() {
        return Ok(SeriesResult { value: ExtReal::ZERO, terms_used: 0, tail_estimate: ExtReal::ZERO });
    }
    let two = ExtReal::from(2u32);
    let spec = HypSpec::new(vec![one + x, one - x, one, one], vec![two + y, two - y, two], Argument::PlusOne)?;
    let r = eval(&spec, CAP, tight())?;
    Ok(SeriesResult { value: t1 * r.value, terms_used: r.terms_used, tail_estimate: (t1 * r.tail_estimate).abs() })
}

/// `Σ_{m>=1} (x)_m(-x)_m / (m (1+x)_m (1-x)_m)` against `-Σ_{r>=1} ζ(2r+1) x^{2r}`.
pub fn check_odd_zeta_series(x: ExtReal) -> Result<Comparison> {
    if x.abs() >= ExtReal::HALF {
        return domain("odd zeta series check needs |x| < 1/2");
    }
    let lhs = mixed_ratio_series(x, x)?;
    // sum_r ζ(2r+1) x^2r = sum_n x^2 / (n (n^2 - x^2)); the first 29 powers come
    // from the ζ table and the remainder from the rational form
    let x2 = x.sqr();
    let mut rhs = ExtReal::ZERO;
    let mut pw = ExtReal::ONE;
    for r in 1..=29u32 {
        pw *= x2;
        rhs += zeta(2 * r + 1)? * pw;
    }
    let mut n = 1u32;
    loop {
        let nn = ExtReal::from(n);
        let q = x2 / nn.sqr();
        let t = q.powi(29) * q / (nn * (ExtReal::ONE - q));
        rhs += t;
        if t.abs().to_f64() < 1e-40 || n > 1000 {
            break;
        }
        n += 1;
    }
    Ok(Comparison::new(lhs.value, -rhs, lhs.tail_estimate + gamma_rounding(rhs)))
}

/// Rational parameters for the terminating identities.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCase {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub n: u32,
}

/// `count` seeded random cases with numerators in `[-12, 12]`, denominators in
/// `[1, 6]` and `n <= max_n`, keeping only those `accept` allows.
pub fn random_rational_cases(
    seed: u64,
    count: usize,
    max_n: u32,
    accept: impl Fn(&RationalCase) -> bool,
) -> Vec<RationalCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Rational::new(rng.random_range(-12i64..=12).into(), rng.random_range(1i64..=6).into());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let case = RationalCase { a: draw(&mut rng), b: draw(&mut rng), c: draw(&mut rng), n: rng.random_range(0..=max_n) };
        if accept(&case) {
            out.push(case);
        }
    }
    out
}
