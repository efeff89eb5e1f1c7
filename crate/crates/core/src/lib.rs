//! Multiple zeta values, alternating double Euler sums, Zagier's H(a,b) sums and
//! hypergeometric series at ±1, all in double-double precision, plus the
//! harness that checks the identities relating them.

pub mod error;
pub mod euler_sums;
pub mod genfun;
pub mod hpreal;
pub mod hypergeom;
pub mod series;
pub mod verify;
pub mod zagier;
pub mod zeta;

pub use error::{Error, Result};
pub use hpreal::{ExtReal, Rational};
pub use series::{Comparison, SeriesResult};
pub use zeta::{RegValue, ZetaIndex};
