//! Counting solutions of `sum Y_i Z_i = 0`, `sum Y_i U_i = 0` in F2[T].

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::build::ShapeParams;
use crate::gamma::{gamma_distribution, RankDistribution};
use crate::poly::clmul;
use crate::Error;

pub const DEFAULT_BRUTE_BUDGET_BITS: u32 = 24;

/// `q` triples with `deg Y <= k-1`, `deg Z <= s-1`, `deg U <= s+m-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionCountQuery {
    pub q: usize,
    pub p: ShapeParams,
}

impl SolutionCountQuery {
    pub fn new(q: usize, p: ShapeParams) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::InvalidShape);
        }
        Ok(SolutionCountQuery { q, p })
    }

    /// Bits in one (Y, Z, U) triple.
    pub fn triple_bits(&self) -> usize {
        self.p.k + self.p.s + self.p.s + self.p.m
    }
}

/// Count from the closed-form rank distribution.
pub fn count_solutions_formula(query: &SolutionCountQuery) -> Result<BigInt, Error> {
    let d = gamma_distribution(&query.p)?;
    count_solutions_from(query, &d)
}

/// `2^((2s+m+k)(q-1) - k + 2) * sum_i counts[i] * 2^(-q i)`, exactly.
pub fn count_solutions_from(query: &SolutionCountQuery, d: &RankDistribution) -> Result<BigInt, Error> {
    let p = &query.p;
    let q = query.q as i64;
    let top = p.rank_bound();
    let sum: BigInt = d.counts.iter().enumerate().map(|(i, c)| c << (query.q * (top - i))).sum();
    let n = (2 * p.s + p.m + p.k) as i64;
    let e = n * (q - 1) - p.k as i64 + 2 - q * top as i64;
    if e >= 0 {
        return Ok(sum << e as usize);
    }
    let sh = (-e) as usize;
    let low: BigInt = &sum & ((BigInt::one() << sh) - 1);
    if !low.is_zero() {
        return Err(Error::NonIntegral);
    }
    Ok(sum >> sh)
}

/// Packed `(Y Z, Y U)` products for every triple, in triple-index order.
pub fn triple_products(p: &ShapeParams) -> Vec<(u64, u64)> {
    let (ky, kz, ku) = (p.k, p.s, p.s + p.m);
    let mut out = Vec::with_capacity(1 << (ky + kz + ku));
    for y in 0..1u64 << ky {
        for z in 0..1u64 << kz {
            let yz = clmul(y, z);
            for u in 0..1u64 << ku {
                out.push((yz, clmul(y, u)));
            }
        }
    }
    out
}

pub fn check_brute_budget(query: &SolutionCountQuery, budget_bits: u32) -> Result<(), Error> {
    let needed = query.q * query.triple_bits();
    if needed > budget_bits as usize {
        return Err(Error::BudgetExceeded { needed_bits: needed as u32, budget_bits });
    }
    Ok(())
}

/// Solutions whose first triple index lies in `lo..hi`.
pub fn count_solutions_for_first(query: &SolutionCountQuery, prods: &[(u64, u64)], lo: usize, hi: usize) -> u64 {
    fn rest(prods: &[(u64, u64)], depth: usize, acc: (u64, u64)) -> u64 {
        if depth == 0 {
            return u64::from(acc == (0, 0));
        }
        prods.iter().map(|&(a, b)| rest(prods, depth - 1, (acc.0 ^ a, acc.1 ^ b))).sum()
    }
    prods[lo..hi].iter().map(|&first| rest(prods, query.q - 1, first)).sum()
}

/// Count by walking every q-tuple of triples.
pub fn count_solutions_bruteforce(query: &SolutionCountQuery, budget_bits: u32) -> Result<BigInt, Error> {
    check_brute_budget(query, budget_bits)?;
    let prods = triple_products(&query.p);
    Ok(BigInt::from(count_solutions_for_first(query, &prods, 0, prods.len())))
}
