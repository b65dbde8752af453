//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use persymm::parallel;
use persymm::{gamma_table, GammaMethod};
use persymm_core::build::CoefficientPair;
use persymm_core::expsums::{exp_sum_direct, exp_sum_rank_formula, SumKind};
use persymm_core::oracle::{augmented_doubling_failures, delta_from_sigma, six_tuple_failures};
use persymm_core::recurrence::{delta_remainder, gamma_difference};
use persymm_core::solutions::{count_solutions_bruteforce, count_solutions_formula};
use persymm_core::{gamma, gamma_distribution, RankDistribution, ShapeParams, SolutionCountQuery, StatKind};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const BUDGET: u32 = 26;

fn shape(s: usize, m: usize, k: usize) -> ShapeParams {
    ShapeParams::new(s, m, k).unwrap()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(p: &ShapeParams) -> Result<RankDistribution, String> {
    parallel::rank_distribution(p, BUDGET, 0).map_err(|e| format!("{p:?}: {e}"))
}

/// All four methods give `want`; the oracle runs on one thread within `limit`.
fn four_methods(p: ShapeParams, want: &[u64], limit: Duration) -> Outcome {
    let want = big(want);
    for method in [GammaMethod::ClosedForm, GammaMethod::Recurrence, GammaMethod::Reduction] {
        let t = gamma_table(&p, method, BUDGET, 1).map_err(|e| e.to_string())?;
        ensure(t.counts() == want, || format!("{}: {:?}", method.name(), t.counts()))?;
    }
    let start = Instant::now();
    let t = gamma_table(&p, GammaMethod::Oracle, BUDGET, 1).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(t.counts() == want, || format!("oracle: {:?}", t.counts()))?;
    ensure(took < limit, || format!("oracle took {took:?}, limit {limit:?}"))?;
    Ok(format!("2^{} pairs enumerated single-threaded in {took:.2?}", p.pair_bits()))
}

fn c1_first_table() -> Outcome {
    four_methods(shape(3, 2, 4), &[1, 9, 78, 648, 15648], Duration::from_secs(1))
}

fn c2_second_table() -> Outcome {
    four_methods(shape(5, 0, 6), &[1, 9, 78, 648, 5280, 42624, 999936], Duration::from_secs(30))
}

fn c3_solution_counts() -> Outcome {
    let a = count_solutions_formula(&SolutionCountQuery::new(3, shape(3, 2, 4)).unwrap()).map_err(|e| e.to_string())?;
    ensure(a == BigInt::from(35_356_672u64), || format!("q=3 (3,2,4): {a}"))?;
    let b = count_solutions_formula(&SolutionCountQuery::new(4, shape(5, 0, 6)).unwrap()).map_err(|e| e.to_string())?;
    let want = BigInt::from(37_014_016u64) << 20;
    ensure(b == want, || format!("q=4 (5,0,6): {b}"))?;
    Ok(format!("{a} and {b}"))
}

fn c4_brute_force_counts() -> Outcome {
    let mut queries = vec![];
    for q in 1..=2 {
        for (s, m, k) in [(2, 0, 1), (2, 0, 2), (2, 1, 1), (2, 1, 2), (3, 0, 2)] {
            queries.push(SolutionCountQuery::new(q, shape(s, m, k)).unwrap());
        }
    }
    queries.push(SolutionCountQuery::new(3, shape(2, 0, 1)).unwrap());
    for q in &queries {
        let brute = count_solutions_bruteforce(q, 24).map_err(|e| format!("{q:?}: {e}"))?;
        let formula = count_solutions_formula(q).map_err(|e| e.to_string())?;
        ensure(brute == formula, || format!("{q:?}: brute force {brute}, formula {formula}"))?;
    }
    Ok(format!("{} queries", queries.len()))
}

fn c5_moments() -> Outcome {
    let mut n = 0;
    for s in 1..=5 {
        for m in 0..=4 {
            for k in 1..=12 {
                gamma_distribution(&shape(s, m, k)).map_err(|e| format!("s={s} m={m} k={k}: {e}"))?;
                n += 1;
            }
        }
    }
    for s in 1..=30 {
        for m in 0..=4 {
            for k in 1..=30 {
                gamma_distribution(&shape(s, m, k)).map_err(|e| format!("s={s} m={m} k={k}: {e}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} shapes, s and k up to 30"))
}

fn c6_oracle_equality() -> Outcome {
    let mut n = 0;
    for s in 2..=4 {
        for m in 0..=3 {
            for k in 1..=8 {
                let p = shape(s, m, k);
                if p.pair_bits() > 22 {
                    continue;
                }
                let d = oracle(&p)?;
                let f = gamma_distribution(&p).map_err(|e| e.to_string())?;
                ensure(d == f, || format!("{p:?}: oracle {:?}, closed form {:?}", d.counts, f.counts))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} shapes"))
}

fn c7_invertible_fraction() -> Outcome {
    let mut n = 0;
    for s in 2..=30 {
        for m in 0..=if s <= 4 { 3 } else { 10 } {
            let size = 2 * s + m;
            let g = gamma(&shape(s, m, size), size);
            let total = BigInt::from(1) << (2 * size + 2 * s + m - 2);
            ensure(g.clone() * 8 == total * 3, || format!("s={s} m={m}: {g}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} square shapes, s up to 30"))
}

fn c8_remainder() -> Outcome {
    let mut cases = 0;
    let mut minus_three = 0;
    for s in 2..=3 {
        for m in 0..=2 {
            let n = 2 * s + m;
            // Independence of k, straight from the enumerated sigma tables.
            for i in 0..=n - 3 {
                let mut seen: Option<BigInt> = None;
                for k in i + 1..=i + 3 {
                    let p = shape(s, m, k);
                    let st = parallel::joint_stats(&p, StatKind::SigmaTriple, BUDGET, 0).map_err(|e| e.to_string())?;
                    let d = delta_from_sigma(&st, i);
                    if let Some(prev) = &seen {
                        ensure(*prev == d, || format!("s={s} m={m} i={i} k={k}: {d} vs {prev}"))?;
                    }
                    seen = Some(d);
                }
                cases += 1;
            }
            // One recurrence step on oracle counts with the enumerated remainder.
            for k in 1..=8 {
                let p = shape(s, m, k);
                if p.pair_bits() > 22 {
                    continue;
                }
                let st = parallel::joint_stats(&p, StatKind::SigmaTriple, BUDGET, 0).map_err(|e| e.to_string())?;
                let here = oracle(&p)?.counts;
                let fewer_top = oracle(&ShapeParams::from_blocks(s - 1, s + m, k).unwrap())?.counts;
                let fewer_bottom = oracle(&ShapeParams::from_blocks(s, s + m - 1, k).unwrap())?.counts;
                let both = oracle(&shape(s - 1, m, k))?.counts;
                let at = |v: &Vec<BigInt>, i: usize| v.get(i).cloned().unwrap_or_default();
                for (i, count) in here.iter().enumerate() {
                    let d = delta_from_sigma(&st, i);
                    let mut rhs = d.clone();
                    if i >= 1 {
                        rhs += 2 * at(&fewer_top, i - 1) + 4 * at(&fewer_bottom, i - 1);
                    }
                    if i >= 2 {
                        rhs -= 8 * at(&both, i - 2);
                    }
                    ensure(rhs == *count, || format!("{p:?} i={i}: recurrence {rhs}, oracle {count}"))?;
                    let closed = delta_remainder(&p, i).map_err(|e| e.to_string())?;
                    ensure(closed == d, || format!("{p:?} i={i}: closed remainder {closed}, enumerated {d}"))?;
                    if i == 1 && k >= 2 {
                        // The branch without the extra -3 would be closed + 3.
                        ensure(closed.clone() + 3 != d, || format!("{p:?}: branch without -3 also matches"))?;
                        minus_three += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} settled ranks; the -3 branch confirmed on {minus_three} shapes"))
}

fn c9_exp_sums() -> Outcome {
    let start = Instant::now();
    let mut n = 0u64;
    for (s, m, k) in [(2, 0, 2), (2, 0, 3), (2, 1, 2), (2, 1, 3), (3, 0, 3)] {
        let p = shape(s, m, k);
        for b in 0..1u64 << p.beta_len() {
            for a in 0..1u64 << p.alpha_len() {
                let c = CoefficientPair::from_words(&p, a, b).unwrap();
                for kind in SumKind::ALL {
                    let d = exp_sum_direct(kind, &p, &c).map_err(|e| e.to_string())?;
                    let r = exp_sum_rank_formula(kind, &p, &c).map_err(|e| e.to_string())?;
                    ensure(d == r, || {
                        format!("{} {p:?} alpha={a:#b} beta={b:#b}: direct {d}, ranks {r}", kind.name())
                    })?;
                    n += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!("{n} evaluations in {took:.2?}"))
}

fn c10_identities() -> Outcome {
    let mut n = 0;
    for s in 2..=3 {
        for m in 0..=2 {
            for k in 2..=6 {
                let p = shape(s, m, k);
                let six = parallel::joint_stats(&p, StatKind::SixTuple, BUDGET, 0).map_err(|e| e.to_string())?;
                let bad = six_tuple_failures(&six);
                ensure(bad.is_empty(), || format!("{p:?}: {:?}", bad[0]))?;
                let aug = parallel::joint_stats(&p, StatKind::AugmentedTriple, BUDGET, 0).map_err(|e| e.to_string())?;
                let bad = augmented_doubling_failures(&aug);
                ensure(bad.is_empty(), || format!("{p:?}: {:?}", bad[0]))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} shapes"))
}

fn c11_telescoping() -> Outcome {
    let mut n = 0;
    let mut check = |s: usize, m: usize, k: usize| -> Result<(), String> {
        let (p, next) = (shape(s, m, k), shape(s, m, k + 1));
        for i in 0..=2 * s + m {
            if let Ok(d) = gamma_difference(&p, i) {
                let got = gamma(&next, i) - gamma(&p, i);
                ensure(got == d, || format!("s={s} m={m} k={k} i={i}: {got} vs {d}"))?;
                n += 1;
            }
        }
        Ok(())
    };
    for s in 2..=4 {
        for m in 0..=3 {
            for k in 1..=10 {
                check(s, m, k)?;
            }
        }
    }
    for s in 2..=30 {
        for m in 0..=4 {
            for k in 1..=30 {
                check(s, m, k)?;
            }
        }
    }
    Ok(format!("{n} differences, s and k up to 30"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rank table (3,2,4) by four methods", c1_first_table),
        ("rank table (5,0,6) by four methods", c2_second_table),
        ("solution counts from the rank tables", c3_solution_counts),
        ("solution counts by brute force", c4_brute_force_counts),
        ("moment identities", c5_moments),
        ("enumeration equals closed forms", c6_oracle_equality),
        ("invertible fraction 3/8", c7_invertible_fraction),
        ("remainder term from sigma tables", c8_remainder),
        ("character sums equal rank formulas", c9_exp_sums),
        ("zero pattern and partition identities", c10_identities),
        ("difference telescoping", c11_telescoping),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name} ({detail}; {took:.2?})", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
