//! Weight-k generating polynomials of the double sums,
//! `sum_{r+s=k} c_{r,s} x^(r-1) y^(s-1)`, and the relations between them.

use std::fmt;

use crate::error::{domain, Result};
use crate::euler_sums::{double_direct, DoubleIndex};
use crate::hpreal::{binom, ExtReal};
use crate::zeta::{zeta_reg, RegValue, ZetaIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenFn {
    /// ζ(r̄)ζ(s)
    F1,
    /// ζ(r̄)ζ(s̄)
    F2,
    /// ζ(r̄,s), with the s = 1 slot regularized
    G1,
    /// ζ(r,s̄)
    G2,
    /// ζ(r̄,s̄)
    G3,
    /// ζ(k) (x^(k-1) - y^(k-1))/(x - y)
    T1,
    /// ζ(k̄) (x^(k-1) - y^(k-1))/(x - y)
    T2,
}

impl GenFn {
    pub const ALL: [GenFn; 7] = [GenFn::F1, GenFn::F2, GenFn::G1, GenFn::G2, GenFn::G3, GenFn::T1, GenFn::T2];
}

impl std::str::FromStr for GenFn {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "F1" => GenFn::F1,
            "F2" => GenFn::F2,
            "G1" => GenFn::G1,
            "G2" => GenFn::G2,
            "G3" => GenFn::G3,
            "T1" => GenFn::T1,
            "T2" => GenFn::T2,
            _ => return domain(format!("unknown generating function {s:?}")),
        })
    }
}

/// Homogeneous polynomial of degree `weight - 2`; `coeffs[r-1]` multiplies
/// `x^(r-1) y^(weight-r-1)`. `error` bounds the absolute error of every
/// coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogPoly {
    pub weight: u32,
    pub coeffs: Vec<RegValue>,
    pub error: ExtReal,
}

impl HomogPoly {
    pub fn zero(weight: u32) -> Self {
        HomogPoly { weight, coeffs: vec![RegValue::ZERO; weight as usize - 1], error: ExtReal::ZERO }
    }

    pub fn is_palindromic(&self, tol: f64) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| {
            let d = self.coeffs[i] - self.coeffs[n - 1 - i];
            d.finite.abs().to_f64() <= tol && d.tcoef.abs().to_f64() <= tol
        })
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: f64, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.weight, other.weight);
        HomogPoly {
            weight: self.weight,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| *a + *b * c).collect(),
            error: self.error + other.error * c.abs(),
        }
    }

    /// Largest coefficient magnitude, separately on finite and T parts.
    pub fn max_abs(&self) -> (ExtReal, ExtReal) {
        self.coeffs.iter().fold((ExtReal::ZERO, ExtReal::ZERO), |(f, t), c| {
            (f.max(c.finite.abs()), t.max(c.tcoef.abs()))
        })
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.weight - 2;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] x^{i} y^{}", deg - i as u32)?;
        }
        Ok(())
    }
}

/// Linear substitution `(x, y) -> (a x + b y, c x + d y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subst {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Subst {
    pub const IDENTITY: Subst = Subst::new(1, 0, 0, 1);
    pub const SWAP: Subst = Subst::new(0, 1, 1, 0);
    pub const NEGATE: Subst = Subst::new(-1, 0, 0, -1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Subst { a, b, c, d }
    }

    /// Substitution equivalent to applying `self` and then `inner`:
    /// `substitute(p, outer.then(inner)) = substitute(substitute(p, inner), outer)`.
    pub fn then(self, inner: Subst) -> Subst {
        // p(inner(outer(x, y)))
        Subst {
            a: inner.a * self.a + inner.b * self.c,
            b: inner.a * self.b + inner.b * self.d,
            c: inner.c * self.a + inner.d * self.c,
            d: inner.c * self.b + inner.d * self.d,
        }
    }

    fn max_row_sum(&self) -> i64 {
        (self.a.abs() + self.b.abs()).max(self.c.abs() + self.d.abs())
    }
}

/// `p(a x + b y, c x + d y)`, expanded with exact integer binomials.
pub fn substitute(p: &HomogPoly, m: Subst) -> HomogPoly {
    let deg = p.weight as usize - 2;
    let mut out = HomogPoly::zero(p.weight);
    let pw = |base: i64, e: usize| base.pow(e as u32);
    for (i, coef) in p.coeffs.iter().enumerate() {
        let j = deg - i;
        for u in 0..=i {
            let left = binom(i as i64, u as i64).expect("degree <= 62") as i64 * pw(m.a, u) * pw(m.b, i - u);
            if left == 0 {
                continue;
            }
            for w in 0..=j {
                let right = binom(j as i64, w as i64).expect("degree <= 62") as i64 * pw(m.c, w) * pw(m.d, j - w);
                if right != 0 {
                    out.coeffs[u + w] += *coef * (left * right) as f64;
                }
            }
        }
    }
    out.error = p.error * (m.max_row_sum() as f64).powi(deg as i32).max(1.0);
    out
}

fn reg(weight: u32, bar: bool) -> Result<RegValue> {
    zeta_reg(ZetaIndex { weight, bar })
}

/// Builds a generating polynomial. Double sums come from direct summation with
/// `n_max` terms, never from the closed forms.
pub fn build(name: GenFn, k: u32, n_max: u64) -> Result<HomogPoly> {
    if !(3..=15).contains(&k) {
        return domain(format!("generating functions need 3 <= k <= 15, got {k}"));
    }
    let mut p = HomogPoly::zero(k);
    let direct = |idx: DoubleIndex, err: &mut ExtReal| -> Result<RegValue> {
        let d = double_direct(idx, n_max)?;
        *err = err.max(d.tail_estimate);
        Ok(RegValue::finite(d.value))
    };
    let mut err = ExtReal::ZERO;
    for r in 1..k {
        let s = k - r;
        p.coeffs[r as usize - 1] = match name {
            GenFn::F1 => reg(r, true)?.try_mul(&reg(s, false)?)?,
            GenFn::F2 => reg(r, true)?.try_mul(&reg(s, true)?)?,
            GenFn::G1 if s == 1 => {
                // ζ(r̄,1) = ζ(r̄)T - ζ(1,r̄) - ζ(r+1‾)
                let t = reg(r, true)?.try_mul(&RegValue::T)?;
                t - direct(DoubleIndex::new(1, r, false, true), &mut err)? - reg(r + 1, true)?
            }
            GenFn::G1 => direct(DoubleIndex::new(r, s, true, false), &mut err)?,
            GenFn::G2 => direct(DoubleIndex::new(r, s, false, true), &mut err)?,
            GenFn::G3 => direct(DoubleIndex::new(r, s, true, true), &mut err)?,
            GenFn::T1 => reg(k, false)?,
            GenFn::T2 => reg(k, true)?,
        };
    }
    p.error = err;
    Ok(p)
}

/// All seven polynomials of one weight.
#[derive(Clone, Debug)]
pub struct Family {
    pub weight: u32,
    polys: Vec<HomogPoly>,
}

impl Family {
    pub fn build(k: u32, n_max: u64) -> Result<Self> {
        let polys = GenFn::ALL.iter().map(|&g| build(g, k, n_max)).collect::<Result<Vec<_>>>()?;
        Ok(Family { weight: k, polys })
    }

    pub fn get(&self, g: GenFn) -> &HomogPoly {
        &self.polys[GenFn::ALL.iter().position(|&x| x == g).expect("listed")]
    }

    /// `sum sign · g(M(x, y))`.
    fn combine(&self, terms: &[(f64, GenFn, Subst)]) -> HomogPoly {
        terms.iter().fold(HomogPoly::zero(self.weight), |acc, &(sign, g, m)| {
            acc.add_scaled(sign, &substitute(self.get(g), m))
        })
    }
}

/// Largest coefficient of `LHS - RHS`, separately on finite and T parts,
/// with the propagated direct-sum error as `bound`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationResidual {
    pub finite: ExtReal,
    pub tcoef: ExtReal,
    pub bound: ExtReal,
}

impl RelationResidual {
    fn of(polys: &[HomogPoly]) -> Self {
        polys.iter().fold(
            RelationResidual { finite: ExtReal::ZERO, tcoef: ExtReal::ZERO, bound: ExtReal::ZERO },
            |acc, p| {
                let (f, t) = p.max_abs();
                RelationResidual {
                    finite: acc.finite.max(f),
                    tcoef: acc.tcoef.max(t),
                    bound: acc.bound.max(p.error),
                }
            },
        )
    }
}

const I: Subst = Subst::IDENTITY;

/// `F1 = G1(x,y) + G2(y,x) + T2` and `F2 = G3(x,y) + G3(y,x) + T1`.
pub fn stuffle_relations(f: &Family) -> [HomogPoly; 2] {
    use GenFn::*;
    let sw = Subst::SWAP;
    [
        f.combine(&[(1.0, F1, I), (-1.0, G1, I), (-1.0, G2, sw), (-1.0, T2, I)]),
        f.combine(&[(1.0, F2, I), (-1.0, G3, I), (-1.0, G3, sw), (-1.0, T1, I)]),
    ]
}

/// `F1 = G1(x, x+y) + G3(y, x+y)` and `F2 = G2(x, x+y) + G2(y, x+y)`.
pub fn shuffle_relations(f: &Family) -> [HomogPoly; 2] {
    use GenFn::*;
    let x_xy = Subst::new(1, 0, 1, 1);
    let y_xy = Subst::new(0, 1, 1, 1);
    [
        f.combine(&[(1.0, F1, I), (-1.0, G1, x_xy), (-1.0, G3, y_xy)]),
        f.combine(&[(1.0, F2, I), (-1.0, G2, x_xy), (-1.0, G2, y_xy)]),
    ]
}

/// The three relations obtained by alternating the stuffle and shuffle
/// relations, which isolate `G(x,y) - G(-x,-y)` for each of G1, G2, G3.
pub fn antisymmetric_relations(f: &Family) -> [HomogPoly; 3] {
    use GenFn::*;
    let s = Subst::new;
    [
        f.combine(&[
            (1.0, G1, I),
            (-1.0, G1, Subst::NEGATE),
            (-1.0, F1, I),
            (1.0, F1, s(1, 0, 0, -1)),
            (1.0, F2, s(1, -1, 0, 1)),
            (-1.0, F2, s(1, -1, 0, -1)),
            (-1.0, F1, s(1, 0, 1, -1)),
            (1.0, F1, s(-1, 0, 1, -1)),
            (1.0, T2, I),
            (1.0, T2, s(1, 0, 1, -1)),
            (1.0, T1, s(1, -1, 0, -1)),
        ]),
        f.combine(&[
            (1.0, G2, I),
            (-1.0, G2, Subst::NEGATE),
            (-1.0, F1, s(0, 1, 1, 0)),
            (1.0, F1, s(0, -1, 1, 0)),
            (1.0, F1, s(0, 1, 1, -1)),
            (-1.0, F1, s(0, -1, 1, -1)),
            (-1.0, F2, s(1, 0, 1, -1)),
            (1.0, F2, s(-1, 0, 1, -1)),
            (1.0, T2, I),
            (1.0, T1, s(1, 0, 1, -1)),
            (1.0, T2, s(1, -1, 0, -1)),
        ]),
        f.combine(&[
            (1.0, G3, I),
            (-1.0, G3, Subst::NEGATE),
            (-1.0, F2, I),
            (1.0, F2, s(1, 0, 0, -1)),
            (1.0, F1, s(1, -1, 0, 1)),
            (-1.0, F1, s(1, -1, 0, -1)),
            (-1.0, F1, s(1, -1, 1, 0)),
            (1.0, F1, s(1, -1, -1, 0)),
            (1.0, T1, I),
            (1.0, T2, s(1, 0, 1, -1)),
            (1.0, T2, s(1, -1, 0, -1)),
        ]),
    ]
}

pub fn verify_stuffle_relations(k: u32, n_max: u64) -> Result<RelationResidual> {
    Ok(RelationResidual::of(&stuffle_relations(&Family::build(k, n_max)?)))
}

pub fn verify_shuffle_relations(k: u32, n_max: u64) -> Result<RelationResidual> {
    Ok(RelationResidual::of(&shuffle_relations(&Family::build(k, n_max)?)))
}

/// Odd weights only.
pub fn verify_antisymmetric_relations(k: u32, n_max: u64) -> Result<RelationResidual> {
    if k % 2 == 0 {
        return domain(format!("antisymmetric relations need odd weight, got {k}"));
    }
    Ok(RelationResidual::of(&antisymmetric_relations(&Family::build(k, n_max)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{zeta, zeta_bar};

    const N: u64 = 1000;

    #[test]
    fn t1_coefficients() {
        let p = build(GenFn::T1, 3, N).unwrap();
        assert_eq!(p.coeffs, vec![RegValue::finite(zeta(3).unwrap()); 2]);
    }

    #[test]
    fn g1_regularized_slot() {
        let p = build(GenFn::G1, 3, N).unwrap();
        assert!((p.coeffs[1].tcoef - zeta_bar(2).unwrap()).abs().to_f64() < 1e-31);
        assert!(p.coeffs[0].tcoef.is_zero());
    }

    #[test]
    fn unknown_name_and_weight() {
        assert!("G4".parse::<GenFn>().is_err());
        assert!(build(GenFn::F1, 2, N).is_err());
        assert!(build(GenFn::F1, 16, N).is_err());
    }

    #[test]
    fn symmetric_polynomials() {
        for k in 3..=8 {
            for g in [GenFn::F2, GenFn::T1, GenFn::T2] {
                assert!(build(g, k, N).unwrap().is_palindromic(0.0), "{g:?} k={k}");
            }
        }
        assert!(!build(GenFn::G1, 5, N).unwrap().is_palindromic(1e-6));
        assert!(!build(GenFn::F1, 5, N).unwrap().is_palindromic(1e-6));
    }

    #[test]
    fn identity_and_negation() {
        let p = build(GenFn::G2, 6, N).unwrap();
        assert_eq!(substitute(&p, Subst::IDENTITY).coeffs, p.coeffs);
        let twice = substitute(&substitute(&p, Subst::NEGATE), Subst::NEGATE);
        assert_eq!(twice.coeffs, p.coeffs);
    }

    #[test]
    fn shear_of_t1() {
        for k in 3..=9 {
            let p = build(GenFn::T1, k, N).unwrap();
            let q = substitute(&p, Subst::new(1, 0, 1, 1));
            let top = q.coeffs[k as usize - 2];
            assert!((top.finite - zeta(k).unwrap() * (k - 1) as f64).abs().to_f64() < 1e-28);
        }
    }

    #[test]
    fn composition_rule() {
        let p = build(GenFn::F1, 7, N).unwrap();
        let ms = [Subst::SWAP, Subst::NEGATE, Subst::new(1, 0, 1, 1), Subst::new(1, -1, 0, 1)];
        for &m1 in &ms {
            for &m2 in &ms {
                let lhs = substitute(&p, m1.then(m2));
                let rhs = substitute(&substitute(&p, m2), m1);
                for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
                    assert!((a.finite - b.finite).abs().to_f64() < 1e-25);
                    assert!((a.tcoef - b.tcoef).abs().to_f64() < 1e-25);
                }
            }
        }
    }

    #[test]
    fn odd_weight_antisymmetrization_keeps_even_slots() {
        let k = 7;
        let p = build(GenFn::G2, k, N).unwrap();
        let diff = p.add_scaled(-1.0, &substitute(&p, Subst::NEGATE));
        for (i, c) in diff.coeffs.iter().enumerate() {
            // degree k-2 is odd: monomials of odd total degree flip sign
            assert!((c.finite - p.coeffs[i].finite * 2.0).abs().to_f64() < 1e-28);
        }
    }

    #[test]
    fn relations_hold() {
        for k in 3..=7 {
            let f = Family::build(k, N).unwrap();
            let mut rels: Vec<HomogPoly> = stuffle_relations(&f).to_vec();
            rels.extend(shuffle_relations(&f));
            if k % 2 == 1 {
                rels.extend(antisymmetric_relations(&f));
            }
            let r = RelationResidual::of(&rels);
            assert!(r.finite.to_f64() < 1e-24, "k={k} {}", r.finite);
            assert!(r.tcoef.to_f64() < 1e-24, "k={k}");
        }
    }
}
