//! Double-double arithmetic, exact rationals, constants and combinatorial tables.

mod bernoulli;
mod binom;
mod consts;
mod dd;
pub mod decimal;
mod elementary;

pub use bernoulli::{bernoulli, bernoulli_over_factorial, bernoulli_poly, bernoulli_table};
pub use binom::binom;
pub use consts::{const_ln2, const_pi, self_check, LN2, PI};
pub use dd::{ExtReal, EPS};

/// Exact rational number; always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `(x)_n` in double-double.
pub fn rising(x: ExtReal, n: u32) -> ExtReal {
    (0..n).fold(ExtReal::ONE, |acc, i| acc * (x + i as f64))
}
