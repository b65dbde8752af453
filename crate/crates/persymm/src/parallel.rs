//! Enumeration drivers that split the outer range across a rayon pool.
//!
//! Each worker fills a private table for a contiguous slice of the outer
//! range; slices are merged in index order, so results do not depend on the
//! worker count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use persymm_core::oracle::{
    beta_count, check_budget, distribution_from_counts, joint_counts_for_betas, merge_joint, rank_counts_for_betas,
    stats_from_packed,
};
use persymm_core::solutions::{check_brute_budget, count_solutions_for_first, triple_products};
use persymm_core::{Error, JointRankStats, RankDistribution, ShapeParams, SolutionCountQuery, StatKind};
use rayon::prelude::*;

/// Upper bound on the number of slices an outer range is cut into.
const MAX_SLICES: u64 = 1024;

/// A pool with `workers` threads, or one per core when `workers` is 0.
pub fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool")
}

/// Cuts `0..total` into at most [`MAX_SLICES`] contiguous pieces.
pub fn slices(total: u64) -> Vec<(u64, u64)> {
    let n = total.clamp(1, MAX_SLICES);
    (0..n).map(|i| (total * i / n, total * (i + 1) / n)).filter(|(lo, hi)| lo < hi).collect()
}

/// Rank distribution by full enumeration on `workers` threads.
pub fn rank_distribution(p: &ShapeParams, budget_bits: u32, workers: usize) -> Result<RankDistribution, Error> {
    check_budget(p, budget_bits)?;
    let parts: Vec<Vec<u64>> = pool(workers)
        .install(|| slices(beta_count(p)).into_par_iter().map(|(lo, hi)| rank_counts_for_betas(p, lo, hi)).collect());
    let mut counts = vec![0u64; p.rank_bound() + 1];
    for part in parts {
        for (c, x) in counts.iter_mut().zip(part) {
            *c += x;
        }
    }
    Ok(distribution_from_counts(p, &counts))
}

/// Joint rank table of `kind` on `workers` threads.
pub fn joint_stats(p: &ShapeParams, kind: StatKind, budget_bits: u32, workers: usize) -> Result<JointRankStats, Error> {
    if p.s < 2 || (kind == StatKind::SixTuple && p.k < 2) {
        return Err(Error::OutOfRegime);
    }
    check_budget(p, budget_bits)?;
    let parts: Vec<BTreeMap<u64, u64>> = pool(workers).install(|| {
        slices(beta_count(p)).into_par_iter().map(|(lo, hi)| joint_counts_for_betas(p, kind, lo, hi)).collect()
    });
    let mut acc = BTreeMap::new();
    for part in parts {
        merge_joint(&mut acc, part);
    }
    Ok(stats_from_packed(p, kind, &acc))
}

/// Brute-force solution count, split over the first triple.
pub fn count_solutions_bruteforce(
    query: &SolutionCountQuery,
    budget_bits: u32,
    workers: usize,
) -> Result<BigInt, Error> {
    check_brute_budget(query, budget_bits)?;
    let prods = triple_products(&query.p);
    let total: u64 = pool(workers).install(|| {
        slices(prods.len() as u64)
            .into_par_iter()
            .map(|(lo, hi)| count_solutions_for_first(query, &prods, lo as usize, hi as usize))
            .collect::<Vec<u64>>()
            .into_iter()
            .sum()
    });
    Ok(BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use persymm_core::oracle::enumerate_rank_distribution;

    #[test]
    fn slices_cover_range() {
        for total in [1u64, 5, 1024, 1025, 1 << 20] {
            let s = slices(total);
            assert_eq!(s.first().unwrap().0, 0);
            assert_eq!(s.last().unwrap().1, total);
            assert!(s.windows(2).all(|w| w[0].1 == w[1].0));
        }
    }

    #[test]
    fn matches_sequential_enumeration() {
        let p = ShapeParams::new(2, 1, 4).unwrap();
        let seq = enumerate_rank_distribution(&p, 20).unwrap();
        for w in [1, 2, 3] {
            assert_eq!(rank_distribution(&p, 20, w).unwrap(), seq);
        }
    }

    #[test]
    fn refuses_over_budget() {
        let p = ShapeParams::new(5, 0, 6).unwrap();
        assert!(matches!(rank_distribution(&p, 10, 1), Err(Error::BudgetExceeded { .. })));
        let q = SolutionCountQuery::new(3, p).unwrap();
        assert!(matches!(count_solutions_bruteforce(&q, 10, 1), Err(Error::BudgetExceeded { .. })));
    }
}
