//! Verification suites: grids of identity checks turned into pass/fail records
//! with decimal-string values.

mod suites;

pub use suites::{
    dougall_grid, gauss_grid, genfun_points, kummer_grid, nested_sets_one, nested_sets_two, EXACT_CASES, GRID_POINTS,
};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hpreal::decimal::to_sci;
use crate::hpreal::{ExtReal, Rational};

/// Significant digits of every value string in a report.
pub const REPORT_DIGITS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub tolerance: String,
    pub pass: bool,
}

fn ext_string(x: ExtReal) -> String {
    match x.to_rational() {
        Some(q) => to_sci(&q, REPORT_DIGITS),
        None => "nan".into(),
    }
}

/// `10^exp` as an exact rational.
fn pow10(exp: i32) -> Rational {
    let p = num_traits::pow(BigInt::from(10), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::from(1), p)
    }
}

fn tol_string(exp: i32) -> String {
    format!("1e{exp}")
}

impl CaseRecord {
    /// `|lhs - rhs| <= 10^tol_exp`, compared exactly on the double-double residual.
    pub fn real(id: impl Into<String>, lhs: ExtReal, rhs: ExtReal, tol_exp: i32) -> Self {
        let residual = lhs - rhs;
        let pass = residual.to_rational().is_some_and(|r| r.abs() <= pow10(tol_exp));
        CaseRecord {
            id: id.into(),
            lhs: ext_string(lhs),
            rhs: ext_string(rhs),
            residual: ext_string(residual),
            tolerance: tol_string(tol_exp),
            pass,
        }
    }

    /// Exact comparison of two rationals; passes only on equality.
    pub fn exact(id: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        let residual = lhs - rhs;
        CaseRecord {
            id: id.into(),
            lhs: to_sci(lhs, REPORT_DIGITS),
            rhs: to_sci(rhs, REPORT_DIGITS),
            residual: to_sci(&residual, REPORT_DIGITS),
            tolerance: "0".into(),
            pass: residual.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Stuffle,
    Shuffle,
    SumFormulas,
    ClosedForms,
    GenFun,
    Hyp,
    Zagier,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 7] = [
        Suite::Stuffle,
        Suite::Shuffle,
        Suite::SumFormulas,
        Suite::ClosedForms,
        Suite::GenFun,
        Suite::Hyp,
        Suite::Zagier,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Stuffle => "stuffle",
            Suite::Shuffle => "shuffle",
            Suite::SumFormulas => "sumformulas",
            Suite::ClosedForms => "closedforms",
            Suite::GenFun => "genfun",
            Suite::Hyp => "hyp",
            Suite::Zagier => "zagier",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::SINGLE
            .iter()
            .chain(&[Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

/// Size of the grids and of the direct sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Smaller grids, `n_max = 2·10^4`.
    Fast,
    /// Full grids, `n_max = 10^5`.
    Standard,
    /// Full grids, `n_max = 10^6`.
    Slow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub level: Level,
    /// Worker threads; 0 uses the number of logical CPUs.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { level: Level::Standard, jobs: 0 }
    }
}

impl VerifyOptions {
    pub fn n_max(&self) -> u64 {
        match self.level {
            Level::Fast => 20_000,
            Level::Standard => 100_000,
            Level::Slow => 1_000_000,
        }
    }

    /// Largest weight of the odd-weight double sum grids.
    pub fn max_odd_weight(&self) -> u32 {
        if self.level == Level::Fast {
            11
        } else {
            15
        }
    }

    /// Largest `a + b` in the H(a,b) grids.
    pub fn max_ab(&self) -> u32 {
        if self.level == Level::Fast {
            4
        } else {
            5
        }
    }
}

/// A unit of work producing one or more records.
pub(crate) type Job = Box<dyn Fn() -> Result<Vec<CaseRecord>> + Send + Sync>;

fn jobs_for(suite: Suite, opts: &VerifyOptions) -> Vec<Job> {
    match suite {
        Suite::Stuffle => suites::stuffle(opts),
        Suite::Shuffle => suites::shuffle(opts),
        Suite::SumFormulas => suites::sum_formulas(opts),
        Suite::ClosedForms => suites::closed_forms(opts),
        Suite::GenFun => suites::genfun(opts),
        Suite::Hyp => suites::hyp(opts),
        Suite::Zagier => suites::zagier(opts),
        Suite::All => Suite::SINGLE
            .iter()
            .flat_map(|&s| {
                jobs_for(s, opts).into_iter().map(move |job| -> Job {
                    Box::new(move || {
                        let mut cases = job()?;
                        for c in &mut cases {
                            c.id = format!("{}/{}", s.name(), c.id);
                        }
                        Ok(cases)
                    })
                })
            })
            .collect(),
    }
}

/// Runs a suite on a worker pool; cases come back sorted by id.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let jobs = jobs_for(suite, opts);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("worker pool: {e}")))?;
    let results: Vec<Result<Vec<CaseRecord>>> = pool.install(|| jobs.par_iter().map(|job| job()).collect());
    let mut cases = Vec::new();
    for r in results {
        cases.extend(r?);
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(VerifyReport { suite: suite.name().into(), cases, wall_time_ms: start.elapsed().as_millis() as u64 })
}
