use std::io::Write;

use clap::{Args, Subcommand};
use eulerlab_core::euler_sums::{closed, double_direct, DoubleIndex, MAX_DOUBLE_WEIGHT};
use eulerlab_core::hpreal::decimal::to_sci;
use eulerlab_core::verify::REPORT_DIGITS;
use eulerlab_core::zagier::{h_closed, hstar_closed, MAX_CLOSED_K};
use eulerlab_core::{ExtReal, RegValue};
use serde::Serialize;

use crate::{CliError, Format};

const DIRECT_TERMS: u64 = 100_000;

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(subcommand)]
    kind: TableKind,
    #[arg(long, value_enum, global = true, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum TableKind {
    /// All four bar patterns of ζ(r,s) with r + s = k.
    Doublesums { k: u32 },
    /// H(a,b) and H*(a,b) for all a + b <= K - 1.
    Hsums { k: u32 },
}

#[derive(Serialize)]
struct DoubleRow {
    r: u32,
    s: u32,
    bar_r: bool,
    bar_s: bool,
    value: String,
    route: String,
}

#[derive(Serialize)]
struct HRow {
    a: u32,
    b: u32,
    star: bool,
    value: String,
    route: String,
}

fn sci(x: ExtReal) -> String {
    x.to_rational().map(|q| to_sci(&q, REPORT_DIGITS)).unwrap_or_else(|| "nan".into())
}

fn reg_string(v: RegValue) -> String {
    if v.tcoef.is_zero() {
        sci(v.finite)
    } else {
        let (sign, t) = if v.tcoef.is_sign_negative() { ('-', -v.tcoef) } else { ('+', v.tcoef) };
        format!("{} {sign} {}*T", sci(v.finite), sci(t))
    }
}

fn double_rows(k: u32) -> Result<Vec<DoubleRow>, CliError> {
    if !(2..=MAX_DOUBLE_WEIGHT).contains(&k) {
        return Err(CliError::Usage(format!("weight must be in 2..={MAX_DOUBLE_WEIGHT}")));
    }
    let mut rows = Vec::new();
    for r in 1..k {
        let s = k - r;
        for (bar_r, bar_s) in [(false, false), (true, false), (false, true), (true, true)] {
            let idx = DoubleIndex::new(r, s, bar_r, bar_s);
            let (value, route) = if k % 2 == 1 {
                let (v, route) = closed(idx)?;
                (reg_string(v), route.name().to_string())
            } else if idx.is_convergent() {
                (sci(double_direct(idx, DIRECT_TERMS)?.value), "direct".to_string())
            } else {
                (String::new(), "divergent".to_string())
            };
            rows.push(DoubleRow { r, s, bar_r, bar_s, value, route });
        }
    }
    Ok(rows)
}

fn h_rows(k: u32) -> Result<Vec<HRow>, CliError> {
    if !(1..=MAX_CLOSED_K).contains(&k) {
        return Err(CliError::Usage(format!("K must be in 1..={MAX_CLOSED_K}")));
    }
    let mut rows = Vec::new();
    for a in 0..k {
        for b in 0..(k - a) {
            for star in [false, true] {
                let v = if star { hstar_closed(a, b)? } else { h_closed(a, b)? };
                rows.push(HRow { a, b, star, value: sci(v), route: "closed".into() });
            }
        }
    }
    Ok(rows)
}

fn emit<T: Serialize>(rows: &[T], format: Format) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Internal(e.to_string());
    let stdout = std::io::stdout();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout.lock());
            for row in rows {
                w.serialize(row).map_err(|e| CliError::Internal(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let text = serde_json::to_string_pretty(rows).map_err(|e| CliError::Internal(e.to_string()))?;
            writeln!(stdout.lock(), "{text}").map_err(io)?;
        }
    }
    Ok(())
}

pub fn run(args: &TableArgs) -> Result<(), CliError> {
    match args.kind {
        TableKind::Doublesums { k } => emit(&double_rows(k)?, args.format),
        TableKind::Hsums { k } => emit(&h_rows(k)?, args.format),
    }
}
