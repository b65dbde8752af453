//! Verification sweep over a box of shapes.
//!
//! Every check yields one line: PASS, FAIL with the offending index and both
//! values, or SKIP with the reason. Checks that compare against rank counts
//! read them from an injectable source so a corrupted source can be shown to
//! fail.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use persymm_core::build::CoefficientPair;
use persymm_core::expsums::{exp_sum_direct, exp_sum_rank_formula, SumKind};
use persymm_core::gamma::distribution_with;
use persymm_core::oracle::{augmented_doubling_failures, delta_from_sigma, six_tuple_failures};
use persymm_core::recurrence::{delta_remainder, gamma_difference, gamma_via_reduction, RecurrenceSolver};
use persymm_core::solutions::count_solutions_from;
use persymm_core::{Error, ShapeParams, SolutionCountQuery, StatKind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::parallel;

/// Per-rank count source consulted by the sweep.
pub type GammaSource<'a> = &'a (dyn Fn(&ShapeParams, usize) -> BigInt + Sync);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub s_range: RangeInclusive<usize>,
    pub m_range: RangeInclusive<usize>,
    pub k_range: RangeInclusive<usize>,
    pub budget_bits: u32,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            s_range: 2..=3,
            m_range: 0..=2,
            k_range: 1..=6,
            budget_bits: persymm_core::oracle::DEFAULT_BUDGET_BITS,
            workers: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub check: String,
    pub s: usize,
    pub m: usize,
    pub k: usize,
    pub status: Status,
    pub detail: String,
}

impl CheckLine {
    pub fn render(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let mut line = format!("{status} {} s={} m={} k={}", self.check, self.s, self.m, self.k);
        if !self.detail.is_empty() {
            line.push_str(": ");
            line.push_str(&self.detail);
        }
        line
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckLine>,
    pub summary: Summary,
}

impl VerifyReport {
    fn push(&mut self, p: &ShapeParams, check: &str, outcome: Outcome) {
        let (status, detail) = match outcome {
            Outcome::Pass => (Status::Pass, String::new()),
            Outcome::Fail(d) => (Status::Fail, d),
            Outcome::Skip(d) => (Status::Skip, d),
        };
        match status {
            Status::Pass => self.summary.passed += 1,
            Status::Fail => self.summary.failed += 1,
            Status::Skip => self.summary.skipped += 1,
        }
        self.checks.push(CheckLine { check: check.to_string(), s: p.s, m: p.m, k: p.k, status, detail });
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.render());
            out.push('\n');
        }
        let Summary { passed, failed, skipped } = self.summary;
        out.push_str(&format!("summary: {passed} passed, {failed} failed, {skipped} skipped\n"));
        out
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn mismatch(i: usize, want: &BigInt, got: &BigInt) -> Outcome {
    Outcome::Fail(format!("i={i} expected {want} got {got}"))
}

fn budget_skip(e: Error) -> Outcome {
    match e {
        Error::BudgetExceeded { needed_bits, budget_bits } => {
            Outcome::Skip(format!("needs {needed_bits} bits, budget {budget_bits}"))
        }
        other => Outcome::Fail(other.to_string()),
    }
}

/// Compares `source` with `reference` at every rank, stopping at the first difference.
fn compare_ranks(p: &ShapeParams, source: GammaSource, mut reference: impl FnMut(usize) -> BigInt) -> Outcome {
    for i in 0..=p.rank_bound() {
        let (want, got) = (reference(i), source(p, i));
        if want != got {
            return mismatch(i, &want, &got);
        }
    }
    Outcome::Pass
}

/// Runs every check on every shape in the configured box.
pub fn run_verify(cfg: &SweepConfig, source: GammaSource) -> VerifyReport {
    let mut report = VerifyReport::default();
    for s in cfg.s_range.clone() {
        for m in cfg.m_range.clone() {
            for k in cfg.k_range.clone() {
                match ShapeParams::new(s, m, k) {
                    Ok(p) => verify_shape(cfg, &p, source, &mut report),
                    Err(e) => {
                        let p = ShapeParams { s, m, k };
                        report.push(&p, "shape", Outcome::Fail(e.to_string()));
                    }
                }
            }
        }
    }
    report
}

fn verify_shape(cfg: &SweepConfig, p: &ShapeParams, source: GammaSource, report: &mut VerifyReport) {
    let (budget, workers) = (cfg.budget_bits, cfg.workers);
    let two_blocks = p.s >= 2;

    let moments = match distribution_with(p, source) {
        Ok(_) => Outcome::Pass,
        Err(e) => Outcome::Fail(e.to_string()),
    };
    report.push(p, "moments", moments);

    let rec = if two_blocks {
        let mut solver = RecurrenceSolver::new();
        compare_ranks(p, source, |i| solver.gamma(p, i))
    } else {
        Outcome::Skip("needs s >= 2".into())
    };
    report.push(p, "recurrence", rec);

    let reducible: Vec<(usize, BigInt)> =
        (0..=p.rank_bound()).filter_map(|i| gamma_via_reduction(p, i).ok().map(|v| (i, v))).collect();
    let red = match reducible.iter().find(|(i, v)| *v != source(p, *i)) {
        _ if reducible.is_empty() => Outcome::Skip("no reducible rank".into()),
        Some((i, v)) => mismatch(*i, v, &source(p, *i)),
        None => Outcome::Pass,
    };
    report.push(p, "reduction", red);

    let oracle = match parallel::rank_distribution(p, budget, workers) {
        Ok(d) => compare_ranks(p, source, |i| d.counts[i].clone()),
        Err(e) => budget_skip(e),
    };
    report.push(p, "oracle", oracle);

    report.push(p, "telescoping", telescoping(p, source));
    report.push(p, "remainder-k-independence", remainder_k_independence(p));
    report.push(p, "remainder-sigma", remainder_sigma(p, budget, workers));
    report.push(p, "column-identities", joint_identities(p, StatKind::SixTuple, budget, workers));
    report.push(p, "augmented-doubling", joint_identities(p, StatKind::AugmentedTriple, budget, workers));
    report.push(p, "exp-sums", exp_sums(p, budget, workers));
    report.push(p, "solutions", solutions(p, source, budget, workers));
}

fn telescoping(p: &ShapeParams, source: GammaSource) -> Outcome {
    if p.s < 2 {
        return Outcome::Skip("needs s >= 2".into());
    }
    let next = ShapeParams { k: p.k + 1, ..*p };
    let mut any = false;
    for i in 0..=p.total_rows() {
        if let Ok(d) = gamma_difference(p, i) {
            any = true;
            let got = source(&next, i) - source(p, i);
            if got != d {
                return mismatch(i, &d, &got);
            }
        }
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip("no difference formula applies".into())
    }
}

/// The remainder at this `k` agrees with the next three column counts, for
/// every rank where it no longer depends on `k`.
fn remainder_k_independence(p: &ShapeParams) -> Outcome {
    if p.s < 2 {
        return Outcome::Skip("needs s >= 2".into());
    }
    let n = p.total_rows();
    let settled = |i: usize| if i + 2 >= n { p.k >= i.max(1) } else { p.k > i };
    let mut any = false;
    for i in (0..=n).filter(|&i| settled(i)) {
        any = true;
        let here = delta_remainder(p, i).expect("settled index");
        for dk in 1..=3 {
            let there = delta_remainder(&ShapeParams { k: p.k + dk, ..*p }, i).expect("settled index");
            if there != here {
                return Outcome::Fail(format!("i={i} k+{dk}: expected {here} got {there}"));
            }
        }
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip("no settled rank".into())
    }
}

fn remainder_sigma(p: &ShapeParams, budget: u32, workers: usize) -> Outcome {
    if p.s < 2 {
        return Outcome::Skip("needs s >= 2".into());
    }
    let st = match parallel::joint_stats(p, StatKind::SigmaTriple, budget, workers) {
        Ok(st) => st,
        Err(e) => return budget_skip(e),
    };
    for i in 0..=p.rank_bound() {
        let (want, got) = (delta_from_sigma(&st, i), delta_remainder(p, i).expect("rank within bound"));
        if want != got {
            return mismatch(i, &want, &got);
        }
    }
    Outcome::Pass
}

fn joint_identities(p: &ShapeParams, kind: StatKind, budget: u32, workers: usize) -> Outcome {
    if p.s < 2 || (kind == StatKind::SixTuple && p.k < 2) {
        return Outcome::Skip("needs s >= 2 and k >= 2".into());
    }
    let st = match parallel::joint_stats(p, kind, budget, workers) {
        Ok(st) => st,
        Err(e) => return budget_skip(e),
    };
    let bad = if kind == StatKind::SixTuple { six_tuple_failures(&st) } else { augmented_doubling_failures(&st) };
    match bad.first() {
        None => Outcome::Pass,
        Some(f) => Outcome::Fail(format!("{} j={} lhs {} rhs {}", f.name, f.index, f.lhs, f.rhs)),
    }
}

fn exp_sums(p: &ShapeParams, budget: u32, workers: usize) -> Outcome {
    if p.s < 2 {
        return Outcome::Skip("needs s >= 2".into());
    }
    let work = p.pair_bits() + p.k + p.s + p.m + 1;
    if work > budget as usize {
        return Outcome::Skip(format!("needs {work} bits, budget {budget}"));
    }
    let first_bad = parallel::pool(workers).install(|| {
        (0..1u64 << p.beta_len()).into_par_iter().find_map_first(|b| {
            for a in 0..1u64 << p.alpha_len() {
                let c = CoefficientPair::from_words(p, a, b).expect("words fit");
                for kind in SumKind::ALL {
                    let d = exp_sum_direct(kind, p, &c).expect("within work cap");
                    let r = exp_sum_rank_formula(kind, p, &c).expect("s >= 2");
                    if d != r {
                        return Some(format!("{} alpha={a:#b} beta={b:#b} direct {d} rank formula {r}", kind.name()));
                    }
                }
            }
            None
        })
    });
    first_bad.map_or(Outcome::Pass, Outcome::Fail)
}

fn solutions(p: &ShapeParams, source: GammaSource, budget: u32, workers: usize) -> Outcome {
    let d = persymm_core::RankDistribution { params: *p, counts: (0..=p.rank_bound()).map(|i| source(p, i)).collect() };
    let single = SolutionCountQuery::new(1, *p).expect("q >= 1");
    let want = (BigInt::from(1) << (2 * p.s + p.m)) + (BigInt::from(1) << p.k) - 1;
    match count_solutions_from(&single, &d) {
        Ok(got) if got != want => return Outcome::Fail(format!("q=1 expected {want} got {got}")),
        Err(e) => return Outcome::Fail(format!("q=1: {e}")),
        Ok(_) => {}
    }
    let mut brute = 0;
    for q in 1..=2 {
        let query = SolutionCountQuery::new(q, *p).expect("q >= 1");
        let Ok(b) = parallel::count_solutions_bruteforce(&query, budget, workers) else { continue };
        brute += 1;
        match count_solutions_from(&query, &d) {
            Ok(f) if f == b => {}
            Ok(f) => return Outcome::Fail(format!("q={q} brute force {b} formula {f}")),
            Err(e) => return Outcome::Fail(format!("q={q}: {e}")),
        }
    }
    if brute == 0 {
        return Outcome::Skip(format!("brute force needs {} bits, budget {budget}", single.triple_bits()));
    }
    Outcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use persymm_core::gamma;

    fn small() -> SweepConfig {
        SweepConfig { s_range: 2..=2, m_range: 0..=1, k_range: 1..=3, budget_bits: 18, workers: 1 }
    }

    #[test]
    fn clean_source_passes() {
        let r = run_verify(&small(), &gamma);
        assert!(r.all_passed(), "{}", r.render_text());
        assert!(r.summary.passed > 20);
    }

    #[test]
    fn corrupted_source_is_caught_with_tuple() {
        let bad = |p: &ShapeParams, i: usize| {
            let g = gamma(p, i);
            if (p.s, p.m, p.k, i) == (2, 1, 3, 2) {
                g + 1
            } else {
                g
            }
        };
        let r = run_verify(&small(), &bad);
        assert!(!r.all_passed());
        let text = r.render_text();
        assert!(text.contains("FAIL oracle s=2 m=1 k=3: i=2 expected 78 got 79"), "{text}");
        assert!(text.contains("FAIL moments s=2 m=1 k=3"));
    }

    #[test]
    fn small_budget_skips_explicitly() {
        let cfg = SweepConfig { s_range: 3..=3, m_range: 2..=2, k_range: 6..=6, budget_bits: 10, workers: 1 };
        let r = run_verify(&cfg, &gamma);
        assert!(r.all_passed());
        assert!(r.render_text().contains("SKIP oracle s=3 m=2 k=6: needs 18 bits, budget 10"));
        assert_eq!(r.summary.skipped, 6);
    }
}
