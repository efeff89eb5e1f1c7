mod compute;
mod table;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerlab_core::hpreal::self_check;
use eulerlab_core::verify::{run_suite, Level, Suite, VerifyOptions, VerifyReport};
use eulerlab_core::Error;

/// Numerical multiple zeta values, alternating Euler sums and hypergeometric identities.
#[derive(Parser, Debug)]
#[command(name = "eulerlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a single value.
    Compute(compute::ComputeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit a table of values.
    Table(table::TableArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// stuffle, shuffle, sumformulas, closedforms, genfun, hyp, zagier or all
    suite: String,
    /// Smaller grids and n_max = 2e4.
    #[arg(long, conflicts_with = "slow")]
    fast: bool,
    /// n_max = 1e6.
    #[arg(long)]
    slow: bool,
    /// Write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads (default: logical CPU count).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Failure modes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Divergent(String),
    Failed(usize),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Divergent(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => CliError::Usage(m),
            Error::Divergent(m) => CliError::Divergent(m),
            Error::DivergentProduct => CliError::Divergent(e.to_string()),
            Error::Truncation { .. } => CliError::Internal(e.to_string()),
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let suite: Suite = args.suite.parse()?;
    let level = if args.fast {
        Level::Fast
    } else if args.slow {
        Level::Slow
    } else {
        Level::Standard
    };
    let opts = VerifyOptions { level, jobs: args.jobs };
    let report = run_suite(suite, &opts).map_err(|e| CliError::Internal(e.to_string()))?;
    print_report(&report);
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
        fs::write(path, text + "\n").map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?;
    }
    match report.failures() {
        0 => Ok(()),
        n => Err(CliError::Failed(n)),
    }
}

fn print_report(r: &VerifyReport) {
    let width = r.cases.iter().map(|c| c.id.len()).max().unwrap_or(2);
    println!("{:<width$}  {:>38}  {:>6}  result", "id", "residual", "tol");
    for c in &r.cases {
        let verdict = if c.pass { "pass" } else { "FAIL" };
        println!("{:<width$}  {:>38}  {:>6}  {verdict}", c.id, c.residual, c.tolerance);
    }
    println!(
        "{}: {} cases, {} failed, {} ms",
        r.suite,
        r.cases.len(),
        r.failures(),
        r.wall_time_ms
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if std::env::var("EULERLAB_PREC_CHECK").is_ok_and(|v| v == "1") {
        if let Err(e) = self_check() {
            eprintln!("constant self-check failed: {e}");
            return ExitCode::from(4);
        }
    }
    let result = match &cli.command {
        Command::Compute(a) => compute::run(a),
        Command::Verify(a) => run_verify(a),
        Command::Table(a) => table::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Divergent(m) => eprintln!("divergent: {m}"),
                CliError::Failed(n) => eprintln!("{n} case(s) failed"),
                CliError::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
