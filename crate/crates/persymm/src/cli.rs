//! Command-line front end. [`run`] does all the work so tests can drive it
//! without spawning a process.

use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use persymm_core::oracle::DEFAULT_BUDGET_BITS;
use persymm_core::solutions::{count_solutions_formula, DEFAULT_BRUTE_BUDGET_BITS};
use persymm_core::{gamma, Error, ShapeParams, SolutionCountQuery};

use crate::parallel;
use crate::report::{self, CountReport, OutputFormat, Params};
use crate::table::{gamma_table, GammaMethod};
use crate::verify::{run_verify, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Hard ceiling on any enumeration budget, in bits.
pub const MAX_BUDGET_BITS: u32 = 30;
pub const BUDGET_ENV: &str = "PERSYMM_BUDGET_BITS";

#[derive(Parser, Debug)]
#[command(name = "persymm", version, about = "Rank counts of stacked persymmetric matrices over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the rank-count table of one shape.
    Gamma(GammaArgs),
    /// Cross-check every method and identity over a box of shapes.
    Verify(VerifyArgs),
    /// Count solutions of the paired bilinear equations.
    Count(CountArgs),
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    /// Rows in the top block.
    #[arg(long)]
    pub s: usize,
    /// Extra rows in the bottom block.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Columns.
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Enumeration cap in bits (at most 30). Falls back to PERSYMM_BUDGET_BITS, then the command default.
    #[arg(long)]
    pub budget_bits: Option<u32>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Print only this rank.
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub method: GammaMethod,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_range, default_value = "2..3")]
    pub s_range: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "0..2")]
    pub m_range: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "1..6")]
    pub k_range: RangeInclusive<usize>,
    /// Text lines by default; json emits the whole report.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Formula,
    Bruteforce,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Number of (Y, Z, U) triples.
    #[arg(long)]
    pub q: usize,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value = "formula")]
    pub method: CountMethod,
    /// Bare number by default.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[command(flatten)]
    pub run: RunArgs,
}

/// Parses `A..B` (inclusive), `A..=B` or a single `A`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad range start {lo:?}: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad range end {hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {text}"));
    }
    Ok(lo..=hi)
}

/// Flag, then environment, then `default`. `None` means a usage error was reported.
fn resolve_budget(flag: Option<u32>, env: Option<String>, default: u32, err: &mut dyn Write) -> Option<u32> {
    let bits = match (flag, env) {
        (Some(b), _) => b,
        (None, Some(text)) => match text.trim().parse() {
            Ok(b) => b,
            Err(_) => {
                let _ = writeln!(err, "error: {BUDGET_ENV}={text:?} is not a bit count");
                return None;
            }
        },
        (None, None) => default,
    };
    if bits > MAX_BUDGET_BITS {
        let _ = writeln!(err, "error: budget of {bits} bits exceeds the maximum of {MAX_BUDGET_BITS}");
        return None;
    }
    Some(bits)
}

fn error_exit(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::MomentFailure { .. } | Error::NonIntegral => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn shape(a: &ShapeArgs, err: &mut dyn Write) -> Result<ShapeParams, i32> {
    ShapeParams::new(a.s, a.m, a.k).map_err(|e| error_exit(&e, err))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, env_budget: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gamma(a) => cmd_gamma(&a, env_budget, out, err),
        Command::Verify(a) => cmd_verify(&a, env_budget, out, err),
        Command::Count(a) => cmd_count(&a, env_budget, out, err),
    };
    result.unwrap_or_else(|code| code)
}

fn cmd_gamma(a: &GammaArgs, env: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let p = shape(&a.shape, err)?;
    let budget = resolve_budget(a.run.budget_bits, env, DEFAULT_BUDGET_BITS, err).ok_or(EXIT_USAGE)?;
    let mut t = gamma_table(&p, a.method, budget, a.run.workers).map_err(|e| error_exit(&e, err))?;
    let ok = t.moments_ok();
    if let Some(i) = a.i {
        t = t.only(i);
    }
    let _ = out.write_all(report::render_gamma(&t, a.format).as_bytes());
    if !ok {
        let _ = writeln!(err, "error: moment identities fail for this table");
        return Ok(EXIT_VERIFY_FAILED);
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, env: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let budget = resolve_budget(a.run.budget_bits, env, DEFAULT_BUDGET_BITS, err).ok_or(EXIT_USAGE)?;
    let cfg = SweepConfig {
        s_range: a.s_range.clone(),
        m_range: a.m_range.clone(),
        k_range: a.k_range.clone(),
        budget_bits: budget,
        workers: a.run.workers,
    };
    let r = run_verify(&cfg, &gamma);
    let text = match a.format {
        Some(OutputFormat::Json) => report::to_json(&r),
        _ => r.render_text(),
    };
    let _ = out.write_all(text.as_bytes());
    Ok(if r.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_count(a: &CountArgs, env: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let p = shape(&a.shape, err)?;
    let query = SolutionCountQuery::new(a.q, p).map_err(|e| error_exit(&e, err))?;
    let count: BigInt = match a.method {
        CountMethod::Formula => count_solutions_formula(&query),
        CountMethod::Bruteforce => {
            let budget = resolve_budget(a.run.budget_bits, env, DEFAULT_BRUTE_BUDGET_BITS, err).ok_or(EXIT_USAGE)?;
            parallel::count_solutions_bruteforce(&query, budget, a.run.workers)
        }
    }
    .map_err(|e| error_exit(&e, err))?;
    let rep = CountReport {
        q: a.q,
        params: Params { s: p.s, m: p.m, k: p.k },
        method: match a.method {
            CountMethod::Formula => "formula",
            CountMethod::Bruteforce => "bruteforce",
        }
        .to_string(),
        count: count.to_string(),
    };
    let text = match a.format {
        None => format!("{count}\n"),
        Some(OutputFormat::Csv) => report::count_csv(&rep),
        Some(OutputFormat::Json) => report::to_json(&rep),
    };
    let _ = out.write_all(text.as_bytes());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..3").unwrap(), 2..=3);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("3..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn budget_resolution() {
        let mut sink = Vec::new();
        assert_eq!(resolve_budget(Some(12), Some("20".into()), 26, &mut sink), Some(12));
        assert_eq!(resolve_budget(None, Some("20".into()), 26, &mut sink), Some(20));
        assert_eq!(resolve_budget(None, None, 26, &mut sink), Some(26));
        assert_eq!(resolve_budget(Some(31), None, 26, &mut sink), None);
        assert_eq!(resolve_budget(None, Some("lots".into()), 26, &mut sink), None);
    }
}
