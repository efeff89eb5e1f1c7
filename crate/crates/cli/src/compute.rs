use clap::{Args, Subcommand};
use eulerlab_core::euler_sums::{closed, double_direct, DoubleIndex};
use eulerlab_core::hpreal::decimal::{parse_rational, to_fixed};
use eulerlab_core::hypergeom::{eval, Argument, HypSpec};
use eulerlab_core::zagier::{h_closed, hstar_closed, nested_direct};
use eulerlab_core::zeta::{zeta, zeta_bar, zeta_reg};
use eulerlab_core::{ExtReal, ZetaIndex};

use crate::CliError;

const DIRECT_TERMS: u64 = 100_000;

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(subcommand)]
    kind: Kind,
    /// Digits after the decimal point.
    #[arg(long, global = true, default_value_t = 30)]
    digits: usize,
}

#[derive(Subcommand, Debug)]
enum Kind {
    /// ζ(k)
    Zeta { k: u32 },
    /// ζ(~k) = sum (-1)^n n^-k
    Zetabar { k: u32 },
    /// Multiple zeta value, innermost index first; `~k` marks an alternating slot.
    Mzv {
        #[arg(required = true)]
        indices: Vec<String>,
    },
    /// H(a,b) or, with --star, H*(a,b)
    Hsum {
        #[arg(long)]
        star: bool,
        a: u32,
        b: u32,
    },
    /// Hypergeometric series pFq at +1 or -1.
    Hyp {
        /// Comma-separated upper parameters (rationals such as 1/3 or 0.25).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        upper: Vec<String>,
        /// Comma-separated lower parameters.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lower: Vec<String>,
        /// Argument of the series: 1 or -1.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        arg: String,
    },
}

fn slot(tok: &str) -> Result<(u32, bool), CliError> {
    let (bar, digits) = match tok.strip_prefix('~') {
        Some(d) => (true, d),
        None => (false, tok),
    };
    match digits.parse::<u32>() {
        Ok(k) if k >= 1 => Ok((k, bar)),
        _ => Err(CliError::Usage(format!("malformed index '{tok}': expected k or ~k with k >= 1"))),
    }
}

fn mzv(indices: &[String]) -> Result<ExtReal, CliError> {
    let slots = indices.iter().map(|t| slot(t)).collect::<Result<Vec<_>, _>>()?;
    match slots.as_slice() {
        [(1, false)] => Err(CliError::Divergent("ζ(1) diverges; its regularized value is the symbol T".into())),
        [(k, false)] => Ok(zeta(*k)?),
        [(k, true)] => Ok(zeta_bar(*k)?),
        [(r, rb), (s, sb)] => {
            let idx = DoubleIndex::new(*r, *s, *rb, *sb);
            let odd = idx.weight() % 2 == 1;
            if !idx.is_convergent() {
                let hint = if odd {
                    match closed(idx) {
                        Ok((v, _)) => format!("; its T-regularized value is {v}"),
                        Err(_) => String::new(),
                    }
                } else {
                    "; regularize with ζ(1) = T".into()
                };
                return Err(CliError::Divergent(format!("{idx} diverges{hint}")));
            }
            if odd {
                Ok(closed(idx)?.0.finite)
            } else {
                Ok(double_direct(idx, DIRECT_TERMS)?.value)
            }
        }
        many => {
            if many.last() == Some(&(1, false)) {
                return Err(CliError::Divergent("the outermost exponent 1 makes the sum diverge".into()));
            }
            if many.iter().any(|&(k, bar)| bar || k < 2) {
                return Err(CliError::Usage(
                    "depth >= 3 supports only non-alternating exponents >= 2".into(),
                ));
            }
            let e: Vec<u32> = many.iter().map(|&(k, _)| k).collect();
            Ok(nested_direct(&e, false, DIRECT_TERMS)?.value)
        }
    }
}

fn rational_list(v: &[String]) -> Result<Vec<ExtReal>, CliError> {
    v.iter()
        .map(|s| {
            parse_rational(s)
                .map(|q| ExtReal::from_rational(&q))
                .ok_or_else(|| CliError::Usage(format!("malformed parameter '{s}'")))
        })
        .collect()
}

fn value(kind: &Kind) -> Result<ExtReal, CliError> {
    match kind {
        Kind::Zeta { k: 0 } => Ok(zeta_reg(ZetaIndex::plain(0))?.finite),
        Kind::Zeta { k: 1 } => Err(CliError::Divergent("ζ(1) diverges; its regularized value is the symbol T".into())),
        Kind::Zeta { k } => Ok(zeta(*k)?),
        Kind::Zetabar { k: 0 } => Ok(zeta_reg(ZetaIndex::barred(0))?.finite),
        Kind::Zetabar { k } => Ok(zeta_bar(*k)?),
        Kind::Mzv { indices } => mzv(indices),
        Kind::Hsum { star, a, b } => Ok(if *star { hstar_closed(*a, *b)? } else { h_closed(*a, *b)? }),
        Kind::Hyp { upper, lower, arg } => {
            let argument = match arg.as_str() {
                "1" | "+1" => Argument::PlusOne,
                "-1" => Argument::MinusOne,
                _ => return Err(CliError::Usage(format!("argument must be 1 or -1, got '{arg}'"))),
            };
            let spec = HypSpec::new(rational_list(upper)?, rational_list(lower)?, argument)?;
            Ok(eval(&spec, 1 << 24, ExtReal::from_f64(1e-25))?.value)
        }
    }
}

pub fn run(args: &ComputeArgs) -> Result<(), CliError> {
    let v = value(&args.kind)?;
    let q = v.to_rational().ok_or_else(|| CliError::Internal("non-finite result".into()))?;
    println!("{}", to_fixed(&q, args.digits));
    Ok(())
}
