//! The case grids of each suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CaseRecord, Job, VerifyOptions};
use crate::euler_sums::{
    closed, double_direct, shuffle_check, stuffle_check, stuffle_closed, sum_formula_check, DoubleIndex,
    ProductRelation, SumFormula,
};
use crate::genfun::{verify_antisymmetric_relations, verify_shuffle_relations, verify_stuffle_relations, RelationResidual};
use crate::hpreal::{ExtReal, Rational};
use crate::hypergeom::{
    check_dougall_limit, check_gauss, check_kummer_type, check_nested_dougall, check_odd_zeta_series,
    check_ratio_expansion, check_saalschutz, random_rational_cases,
};
use crate::series::Comparison;
use crate::zagier::{
    eval_f, eval_fstar, h_closed, h_direct, hstar_closed, hstar_via_euler_sum, sum_identities,
    zeta_bar_odd_from_hstar, zeta_from_hstar, EulerSumRoute, HIndex,
};
use crate::zeta::{zeta, zeta_bar};

/// Tolerance exponent whenever a direct sum takes part.
const DIRECT: i32 = -6;
/// Tolerance exponent between closed forms.
const CLOSED: i32 = -24;

fn job(f: impl Fn() -> crate::Result<Vec<CaseRecord>> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

fn cmp(id: String, c: Comparison, tol: i32) -> CaseRecord {
    CaseRecord::real(id, c.lhs, c.rhs, tol)
}

const PATTERNS: [(bool, bool, &str); 4] =
    [(false, false, "plain"), (true, false, "bar-r"), (false, true, "bar-s"), (true, true, "bar-both")];

fn odd_weights(opts: &VerifyOptions) -> impl Iterator<Item = u32> {
    (3..=opts.max_odd_weight()).step_by(2)
}

fn pair_id(k: u32, r: u32, s: u32) -> String {
    format!("k{k:02}/r{r:02}-s{s:02}")
}

pub(super) fn closed_forms(opts: &VerifyOptions) -> Vec<Job> {
    let n = opts.n_max();
    let mut out = Vec::new();
    for k in odd_weights(opts) {
        for r in 1..k {
            let s = k - r;
            for (r_bar, s_bar, name) in PATTERNS {
                let idx = DoubleIndex::new(r, s, r_bar, s_bar);
                if !idx.is_convergent() {
                    continue;
                }
                let id = format!("{}/{name}", pair_id(k, r, s));
                out.push(job(move || {
                    let (cv, route) = closed(idx)?;
                    let d = double_direct(idx, n)?;
                    Ok(vec![
                        CaseRecord::real(format!("{id}/{}-vs-direct", route.name()), cv.finite, d.value, DIRECT),
                        CaseRecord::real(format!("{id}/{}-tpart", route.name()), cv.tcoef, ExtReal::ZERO, CLOSED),
                    ])
                }));
            }
        }
    }
    out
}

pub(super) fn stuffle(opts: &VerifyOptions) -> Vec<Job> {
    let n = opts.n_max();
    let mut out = Vec::new();
    for k in odd_weights(opts) {
        for r in 1..k {
            let s = k - r;
            for rel in [ProductRelation::AltTimesPlain, ProductRelation::AltTimesAlt] {
                let id = format!("{}/{}", pair_id(k, r, s), rel.name());
                out.push(job(move || {
                    let res = stuffle_closed(r, s, rel)?;
                    let mut cases = vec![
                        CaseRecord::real(format!("{id}/closed"), res.finite, ExtReal::ZERO, CLOSED),
                        CaseRecord::real(format!("{id}/closed-tpart"), res.tcoef, ExtReal::ZERO, CLOSED),
                    ];
                    if rel == ProductRelation::AltTimesAlt || s >= 2 {
                        cases.push(cmp(format!("{id}/direct"), stuffle_check(r, s, rel, n)?, DIRECT));
                    }
                    Ok(cases)
                }));
            }
        }
    }
    out
}

pub(super) fn shuffle(opts: &VerifyOptions) -> Vec<Job> {
    let n = opts.n_max();
    let max_k = if opts.level == super::Level::Fast { 8 } else { 10 };
    let mut out = Vec::new();
    for k in 3..=max_k {
        for r in 1..k {
            let s = k - r;
            for rel in [ProductRelation::AltTimesPlain, ProductRelation::AltTimesAlt] {
                if rel == ProductRelation::AltTimesPlain && s < 2 {
                    continue;
                }
                let id = format!("{}/{}", pair_id(k, r, s), rel.name());
                out.push(job(move || Ok(vec![cmp(id.clone(), shuffle_check(r, s, rel, n)?, DIRECT)])));
            }
        }
    }
    out
}

pub(super) fn sum_formulas(opts: &VerifyOptions) -> Vec<Job> {
    let n = opts.n_max();
    let mut out = Vec::new();
    for k in 3..=8u32 {
        for f in SumFormula::ALL {
            let id = format!("k{k:02}/{}", f.name());
            out.push(job(move || Ok(vec![cmp(id.clone(), sum_formula_check(k, f, n)?, DIRECT)])));
        }
    }
    out
}

fn relation_cases(id: &str, r: RelationResidual) -> Vec<CaseRecord> {
    vec![
        CaseRecord::real(format!("{id}/finite"), r.finite, ExtReal::ZERO, DIRECT),
        CaseRecord::real(format!("{id}/tpart"), r.tcoef, ExtReal::ZERO, CLOSED),
    ]
}

pub(super) fn genfun(opts: &VerifyOptions) -> Vec<Job> {
    let n = opts.n_max();
    let max_k = if opts.level == super::Level::Fast { 7 } else { 9 };
    let mut out = Vec::new();
    for k in 3..=max_k {
        out.push(job(move || Ok(relation_cases(&format!("k{k:02}/stuffle"), verify_stuffle_relations(k, n)?))));
        out.push(job(move || Ok(relation_cases(&format!("k{k:02}/shuffle"), verify_shuffle_relations(k, n)?))));
        if k % 2 == 1 {
            out.push(job(move || {
                Ok(relation_cases(&format!("k{k:02}/antisymmetric"), verify_antisymmetric_relations(k, n)?))
            }));
        }
    }
    out
}

/// Number of cases in each random exact family.
pub const EXACT_CASES: usize = 200;
/// Number of points in each real parameter grid.
pub const GRID_POINTS: usize = 20;

fn ratio(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> ExtReal {
    ExtReal::ratio(rng.random_range(lo..=hi), den)
}

/// Gauss sum grid: `a, b` in `[1/12, 2]`, `c = a + b + δ` with `δ` in `[1/2, 3]`.
pub fn gauss_grid() -> Vec<(ExtReal, ExtReal, ExtReal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a55);
    (0..GRID_POINTS)
        .map(|_| {
            let a = ratio(&mut rng, 1, 24, 12);
            let b = ratio(&mut rng, 1, 24, 12);
            let delta = ratio(&mut rng, 6, 36, 12);
            (a, b, a + b + delta)
        })
        .collect()
}

/// Alternating Kummer grid: `a` in `[1/6, 3]`, `b` in `[-1, 5/6]`.
pub fn kummer_grid() -> Vec<(ExtReal, ExtReal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b55);
    (0..GRID_POINTS).map(|_| (ratio(&mut rng, 1, 18, 6), ratio(&mut rng, -6, 5, 6))).collect()
}

/// Dougall limit grid: `a` in `[1/6, 3]`, `b, c` in `[-1/2, 5/6]` with `2 + a - 2b - 2c > 0`.
pub fn dougall_grid() -> Vec<(ExtReal, ExtReal, ExtReal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6455);
    let mut out = Vec::new();
    while out.len() < GRID_POINTS {
        let a = ratio(&mut rng, 1, 18, 6);
        let b = ratio(&mut rng, -3, 5, 6);
        let c = ratio(&mut rng, -3, 5, 6);
        if (ExtReal::from(2u32) + a - b * 2.0 - c * 2.0).to_f64() > 0.25 {
            out.push((a, b, c));
        }
    }
    out
}

type NestedSet = (ExtReal, Vec<ExtReal>, Vec<ExtReal>);

fn q(p: i64, d: i64) -> ExtReal {
    ExtReal::ratio(p, d)
}

/// Parameter sets `(a, b_1..b_{s+1}, c_1..c_{s+1})` for the one-level nested sum.
pub fn nested_sets_one() -> Vec<NestedSet> {
    vec![
        (q(1, 1), vec![q(1, 3), q(1, 3)], vec![q(1, 4), q(1, 4)]),
        (q(1, 1), vec![q(1, 3), q(1, 4)], vec![q(1, 4), q(1, 3)]),
        (q(2, 1), vec![q(1, 2), q(1, 3)], vec![q(1, 3), q(1, 5)]),
        (q(3, 2), vec![q(1, 5), q(2, 5)], vec![q(1, 4), q(1, 6)]),
        (q(1, 2), vec![q(1, 10), q(1, 5)], vec![q(1, 5), q(1, 10)]),
    ]
}

/// Parameter sets for the two-level nested sum.
pub fn nested_sets_two() -> Vec<NestedSet> {
    vec![
        (q(1, 1), vec![q(1, 5); 3], vec![q(1, 5); 3]),
        (q(1, 1), vec![q(1, 5), q(1, 4), q(1, 6)], vec![q(1, 6), q(1, 5), q(1, 4)]),
        (q(3, 2), vec![q(1, 4), q(1, 5), q(1, 3)], vec![q(1, 5), q(1, 4), q(1, 6)]),
        (q(2, 1), vec![q(1, 3), q(1, 4), q(1, 5)], vec![q(1, 4), q(1, 5), q(1, 3)]),
        (q(1, 2), vec![q(1, 10), q(1, 8), q(1, 6)], vec![q(1, 8), q(1, 10), q(1, 12)]),
    ]
}

/// Sample points `(x, y)` for the generating-function identities.
pub fn genfun_points() -> Vec<(ExtReal, ExtReal)> {
    vec![
        (q(1, 4), q(1, 3)),
        (q(1, 5), q(1, 7)),
        (q(-1, 3), q(1, 4)),
        (q(1, 8), q(-2, 5)),
        (q(2, 5), q(1, 6)),
    ]
}

pub(super) fn hyp(_opts: &VerifyOptions) -> Vec<Job> {
    let mut out = Vec::new();
    out.push(job(|| {
        let cases = random_rational_cases(0x5aa1, EXACT_CASES, 6, |k| check_saalschutz(&k.a, &k.b, &k.c, k.n).is_ok());
        cases
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let res = check_saalschutz(&k.a, &k.b, &k.c, k.n)?;
                Ok(CaseRecord::exact(format!("saalschutz/{i:03}"), &res, &Rational::from_integer(0.into())))
            })
            .collect()
    }));
    out.push(job(|| {
        let cases = random_rational_cases(0xc022, EXACT_CASES, 6, |k| check_ratio_expansion(&k.a, &k.b, &k.c, k.n).is_ok());
        cases
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let res = check_ratio_expansion(&k.a, &k.b, &k.c, k.n)?;
                Ok(CaseRecord::exact(format!("ratio-expansion/{i:03}"), &res, &Rational::from_integer(0.into())))
            })
            .collect()
    }));
    for (i, (a, b, c)) in gauss_grid().into_iter().enumerate() {
        out.push(job(move || Ok(vec![cmp(format!("gauss/{i:02}"), check_gauss(a, b, c)?, -18)])));
    }
    for (i, (a, b)) in kummer_grid().into_iter().enumerate() {
        out.push(job(move || Ok(vec![cmp(format!("kummer-type/{i:02}"), check_kummer_type(a, b)?, -18)])));
    }
    for (i, (a, b, c)) in dougall_grid().into_iter().enumerate() {
        out.push(job(move || Ok(vec![cmp(format!("dougall-limit/{i:02}"), check_dougall_limit(a, b, c)?, -18)])));
    }
    for (i, (a, bs, cs)) in nested_sets_one().into_iter().enumerate() {
        out.push(job(move || {
            let c = check_nested_dougall(a, &bs, &cs, ExtReal::from_f64(1e-14))?;
            Ok(vec![cmp(format!("nested-dougall-1/{i:02}"), c, -10)])
        }));
    }
    for (i, (a, bs, cs)) in nested_sets_two().into_iter().enumerate() {
        out.push(job(move || {
            let c = check_nested_dougall(a, &bs, &cs, ExtReal::from_f64(1e-11))?;
            Ok(vec![cmp(format!("nested-dougall-2/{i:02}"), c, -8)])
        }));
    }
    for (i, x) in [q(1, 4), q(1, 3), q(-2, 5), q(1, 10), q(9, 20)].into_iter().enumerate() {
        out.push(job(move || Ok(vec![cmp(format!("odd-zeta-series/{i:02}"), check_odd_zeta_series(x)?, -18)])));
    }
    out
}

pub(super) fn zagier(opts: &VerifyOptions) -> Vec<Job> {
    let n = opts.n_max();
    let mut out = Vec::new();
    for a in 0..=opts.max_ab() {
        for b in 0..=(opts.max_ab() - a) {
            out.push(job(move || {
                let id = format!("h/a{a}-b{b}");
                let h = h_closed(a, b)?;
                let hs = hstar_closed(a, b)?;
                let hd = h_direct(HIndex::new(a, b, false), n)?;
                let hsd = h_direct(HIndex::new(a, b, true), n)?;
                let via_closed = hstar_via_euler_sum(a, b, EulerSumRoute::Closed)?;
                let via_direct = hstar_via_euler_sum(a, b, EulerSumRoute::Direct(n))?;
                Ok(vec![
                    CaseRecord::real(format!("{id}/closed-vs-direct"), h, hd.value, DIRECT),
                    CaseRecord::real(format!("{id}/star-closed-vs-direct"), hs, hsd.value, DIRECT),
                    CaseRecord::real(format!("{id}/star-closed-vs-euler-sum-closed"), hs, via_closed.value, CLOSED),
                    CaseRecord::real(format!("{id}/star-closed-vs-euler-sum-direct"), hs, via_direct.value, DIRECT),
                    CaseRecord::real(format!("{id}/star-euler-sum-direct-vs-direct"), via_direct.value, hsd.value, DIRECT),
                ])
            }));
        }
    }
    out.push(job(|| {
        let z3 = zeta(3)?;
        Ok(vec![
            CaseRecord::real("h00/strict", h_closed(0, 0)?, z3, CLOSED),
            CaseRecord::real("h00/star", hstar_closed(0, 0)?, z3, CLOSED),
            CaseRecord::real("zeta-from-hstar/r0-s1", zeta_from_hstar(0, 1)?, z3 / 8.0, CLOSED),
        ])
    }));
    for k in 1..=6u32 {
        out.push(job(move || {
            let (h, hs) = sum_identities(k)?;
            Ok(vec![
                CaseRecord::real(format!("sum-identity/K{k}/strict"), h, ExtReal::ZERO, CLOSED),
                CaseRecord::real(format!("sum-identity/K{k}/star"), hs, ExtReal::ZERO, CLOSED),
                CaseRecord::real(format!("zeta-bar-odd/K{k}"), zeta_bar_odd_from_hstar(k)?, zeta_bar(2 * k + 1)?, CLOSED),
            ])
        }));
        for r in 0..k {
            let s = k - r;
            out.push(job(move || {
                let d = double_direct(DoubleIndex::new(2 * r + 1, 2 * s, false, true), n)?;
                Ok(vec![CaseRecord::real(format!("zeta-from-hstar/K{k}/r{r}-s{s}"), zeta_from_hstar(r, s)?, d.value, DIRECT)])
            }));
        }
    }
    for (i, (x, y)) in genfun_points().into_iter().enumerate() {
        out.push(job(move || {
            let f = eval_f(x, y)?;
            let mirrored = -(y.sinc_pi() * x.sinc_pi() * eval_fstar(y, x)?);
            let mut odd = ExtReal::ZERO;
            for r in 1..=29u32 {
                odd += zeta(2 * r + 1)? * x.powi(2 * r as i32);
            }
            let diag = -(x.sinc_pi() * odd);
            Ok(vec![
                CaseRecord::real(format!("genfun/{i:02}/mirror"), f, mirrored, -18),
                CaseRecord::real(format!("genfun/{i:02}/diagonal"), eval_f(x, x)?, diag, -18),
            ])
        }));
    }
    out
}
