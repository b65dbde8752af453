//! Exhaustive enumeration of coefficient pairs.
//!
//! Every enumerator walks `beta` in an outer loop and `alpha` in an inner
//! loop. The `*_for_betas` functions cover a half-open range of `beta` words
//! so callers can split the work and add the partial tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::build::{augmented_row, hankel_rows_into, ShapeParams};
use crate::gamma::RankDistribution;
use crate::gf2::rank_of_rows;
use crate::Error;

pub const DEFAULT_BUDGET_BITS: u32 = 26;

/// Refuses shapes with more than `2^budget_bits` pairs.
pub fn check_budget(p: &ShapeParams, budget_bits: u32) -> Result<(), Error> {
    let needed = p.pair_bits();
    if needed > budget_bits as usize || p.k > 64 || p.beta_len() > 64 {
        return Err(Error::BudgetExceeded { needed_bits: needed as u32, budget_bits });
    }
    Ok(())
}

/// Number of distinct beta words for `p`.
pub fn beta_count(p: &ShapeParams) -> u64 {
    1u64 << p.beta_len()
}

/// Rank of `a` alpha rows over `b` beta rows, first `cols` columns.
#[inline]
fn prefix_rank(buf: &mut [u64], alpha: u64, beta: u64, a: usize, b: usize, cols: usize) -> usize {
    let rows = &mut buf[..a + b];
    hankel_rows_into(alpha, 1, cols, &mut rows[..a]);
    hankel_rows_into(beta, 1, cols, &mut rows[a..]);
    rank_of_rows(rows)
}

/// Per-rank pair counts for `beta` in `lo..hi`.
pub fn rank_counts_for_betas(p: &ShapeParams, lo: u64, hi: u64) -> Vec<u64> {
    let mut counts = alloc::vec![0u64; p.rank_bound() + 1];
    let (s, m, k) = (p.s, p.m, p.k);
    let n = p.total_rows();
    let alphas = 1u64 << p.alpha_len();
    let mut top = alloc::vec![0u64; s];
    let mut rows = alloc::vec![0u64; n];
    let mut bottom = alloc::vec![0u64; s + m];
    for beta in lo..hi {
        hankel_rows_into(beta, 1, k, &mut bottom);
        for alpha in 0..alphas {
            hankel_rows_into(alpha, 1, k, &mut top);
            rows[..s].copy_from_slice(&top);
            rows[s..].copy_from_slice(&bottom);
            counts[rank_of_rows(&mut rows)] += 1;
        }
    }
    counts
}

/// Wraps summed per-rank counts as a distribution.
pub fn distribution_from_counts(p: &ShapeParams, counts: &[u64]) -> RankDistribution {
    RankDistribution { params: *p, counts: counts.iter().map(|&c| BigInt::from(c)).collect() }
}

/// Rank distribution by enumerating every pair.
pub fn enumerate_rank_distribution(p: &ShapeParams, budget_bits: u32) -> Result<RankDistribution, Error> {
    check_budget(p, budget_bits)?;
    let counts = rank_counts_for_betas(p, 0, beta_count(p));
    Ok(distribution_from_counts(p, &counts))
}

/// Which joint rank statistic a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatKind {
    /// (rank without last top and last bottom row, rank without last bottom
    /// row, full rank), all with `k` columns.
    SigmaTriple,
    /// The three row sets of `SigmaTriple`, each at `k-1` then `k` columns.
    SixTuple,
    /// (rank without last top and last bottom row, rank of the augmented
    /// matrix, rank without last bottom row).
    AugmentedTriple,
}

impl StatKind {
    pub fn arity(self) -> usize {
        match self {
            StatKind::SigmaTriple | StatKind::AugmentedTriple => 3,
            StatKind::SixTuple => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StatKind::SigmaTriple => "sigma-triple",
            StatKind::SixTuple => "six-tuple",
            StatKind::AugmentedTriple => "augmented-triple",
        }
    }

    fn check(self, p: &ShapeParams) -> Result<(), Error> {
        if p.s < 2 || (self == StatKind::SixTuple && p.k < 2) {
            return Err(Error::OutOfRegime);
        }
        Ok(())
    }
}

/// Map from rank tuples to pair counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointRankStats {
    pub params: ShapeParams,
    pub kind: StatKind,
    pub table: BTreeMap<Vec<usize>, BigUint>,
}

impl JointRankStats {
    pub fn count(&self, tuple: &[usize]) -> BigUint {
        self.table.get(tuple).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.table.values().sum()
    }

    /// Sums the table onto the listed tuple positions.
    pub fn marginal(&self, positions: &[usize]) -> BTreeMap<Vec<usize>, BigUint> {
        let mut out: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (t, c) in &self.table {
            let key: Vec<usize> = positions.iter().map(|&i| t[i]).collect();
            *out.entry(key).or_default() += c;
        }
        out
    }

    /// Count of tuples whose listed positions all equal `value`.
    pub fn diagonal(&self, positions: &[usize], value: usize) -> BigUint {
        self.table.iter().filter(|(t, _)| positions.iter().all(|&i| t[i] == value)).map(|(_, c)| c).sum()
    }
}

/// Packs ranks one byte each.
#[inline]
fn pack(r: &[usize]) -> u64 {
    r.iter().enumerate().fold(0u64, |acc, (i, &v)| acc | (v as u64) << (8 * i))
}

fn unpack(key: u64, arity: usize) -> Vec<usize> {
    (0..arity).map(|i| (key >> (8 * i) & 0xff) as usize).collect()
}

/// Joint rank counts for `beta` in `lo..hi`, keyed by packed tuples.
pub fn joint_counts_for_betas(p: &ShapeParams, kind: StatKind, lo: u64, hi: u64) -> BTreeMap<u64, u64> {
    let (s, m, k) = (p.s, p.m, p.k);
    let mut buf = alloc::vec![0u64; p.total_rows()];
    let mut out = BTreeMap::new();
    let alphas = 1u64 << p.alpha_len();
    let mut r = [0usize; 6];
    for beta in lo..hi {
        for alpha in 0..alphas {
            match kind {
                StatKind::SigmaTriple => {
                    r[0] = prefix_rank(&mut buf, alpha, beta, s - 1, s + m - 1, k);
                    r[1] = prefix_rank(&mut buf, alpha, beta, s, s + m - 1, k);
                    r[2] = prefix_rank(&mut buf, alpha, beta, s, s + m, k);
                }
                StatKind::SixTuple => {
                    let sets = [(s - 1, s + m - 1), (s, s + m - 1), (s, s + m)];
                    for (t, &(a, b)) in sets.iter().enumerate() {
                        r[2 * t] = prefix_rank(&mut buf, alpha, beta, a, b, k - 1);
                        r[2 * t + 1] = prefix_rank(&mut buf, alpha, beta, a, b, k);
                    }
                }
                StatKind::AugmentedTriple => {
                    r[0] = prefix_rank(&mut buf, alpha, beta, s - 1, s + m - 1, k);
                    let rows = &mut buf[..2 * s + m - 1];
                    hankel_rows_into(alpha, 1, k, &mut rows[..s - 1]);
                    hankel_rows_into(beta, 1, k, &mut rows[s - 1..2 * s + m - 2]);
                    rows[2 * s + m - 2] = augmented_row(p, alpha, beta);
                    r[1] = rank_of_rows(rows);
                    r[2] = prefix_rank(&mut buf, alpha, beta, s, s + m - 1, k);
                }
            }
            *out.entry(pack(&r[..kind.arity()])).or_insert(0u64) += 1;
        }
    }
    out
}

/// Adds `part` into `acc`.
pub fn merge_joint(acc: &mut BTreeMap<u64, u64>, part: BTreeMap<u64, u64>) {
    for (key, c) in part {
        *acc.entry(key).or_insert(0) += c;
    }
}

pub fn stats_from_packed(p: &ShapeParams, kind: StatKind, packed: &BTreeMap<u64, u64>) -> JointRankStats {
    let table = packed.iter().map(|(&key, &c)| (unpack(key, kind.arity()), BigUint::from(c))).collect();
    JointRankStats { params: *p, kind, table }
}

/// Full joint table of `kind`.
pub fn joint_stats(p: &ShapeParams, kind: StatKind, budget_bits: u32) -> Result<JointRankStats, Error> {
    kind.check(p)?;
    check_budget(p, budget_bits)?;
    let packed = joint_counts_for_betas(p, kind, 0, beta_count(p));
    Ok(stats_from_packed(p, kind, &packed))
}

pub fn sigma_triples(p: &ShapeParams, budget_bits: u32) -> Result<JointRankStats, Error> {
    joint_stats(p, StatKind::SigmaTriple, budget_bits)
}

pub fn partition_six_tuple(p: &ShapeParams, budget_bits: u32) -> Result<JointRankStats, Error> {
    joint_stats(p, StatKind::SixTuple, budget_bits)
}

pub fn sigma_augmented_row(p: &ShapeParams, budget_bits: u32) -> Result<JointRankStats, Error> {
    joint_stats(p, StatKind::AugmentedTriple, budget_bits)
}

/// Remainder term from a sigma-triple table: `d(i) - 3 d(i-1) + 2 d(i-2)`
/// where `d(j)` counts tuples `(j, j, j)`.
pub fn delta_from_sigma(stats: &JointRankStats, i: usize) -> BigInt {
    let d = |j: usize| BigInt::from(stats.count(&[j, j, j]));
    let mut v = d(i);
    if i >= 1 {
        v -= 3 * d(i - 1);
    }
    if i >= 2 {
        v += 2 * d(i - 2);
    }
    v
}

/// One failed identity: its name, the rank index, and the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub name: &'static str,
    pub index: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Checks the column-growth identities on a six-tuple table. Tuples are
/// written (a(k-1), a(k), b(k-1), b(k), c(k-1), c(k)) for the three row sets.
pub fn six_tuple_failures(stats: &JointRankStats) -> Vec<IdentityFailure> {
    let p = &stats.params;
    let n = p.total_rows();
    let k = p.k;
    let c = |t: [usize; 6]| BigInt::from(stats.count(&t));
    let mut out = Vec::new();
    let mut push = |name, index, lhs: BigInt, rhs: BigInt| {
        if lhs != rhs {
            out.push(IdentityFailure { name, index, lhs, rhs });
        }
    };
    if n >= 3 && k >= 2 {
        for j in 0..=(n - 3).min(k - 2) {
            push("all-step-empty", j, c([j, j + 1, j, j + 1, j, j + 1]), BigInt::from(0));
        }
    }
    for j in 0..=(n - 2).min(k - 1) {
        let flat = c([j; 6]);
        let top_step = c([j, j, j, j, j, j + 1]);
        push("flat-equals-top-step", j, flat.clone(), top_step.clone());
        push("middle-step-balance", j, flat + top_step, c([j, j, j, j + 1, j, j + 1]));
    }
    let four = stats.marginal(&[2, 3, 4, 5]);
    let f = |t: [usize; 4]| BigInt::from(four.get(&t[..]).cloned().unwrap_or_default());
    for j in 0..=(n - 1).min(k - 1) {
        push("two-set-flat-equals-step", j, f([j, j, j, j]), f([j, j, j, j + 1]));
    }
    out
}

/// Checks that the augmented diagonal count is twice the count over the
/// smaller domain of the stack without the last bottom row. That stack never
/// reads the last beta coefficient, so its own domain count is half the
/// ambient count.
pub fn augmented_doubling_failures(stats: &JointRankStats) -> Vec<IdentityFailure> {
    let p = &stats.params;
    let mut out = Vec::new();
    for i in 0..=(p.total_rows() - 2).min(p.k) {
        let aug = BigInt::from(stats.diagonal(&[0, 1], i));
        let ambient = BigInt::from(stats.diagonal(&[0, 2], i));
        let own_domain = &ambient >> 1u32;
        if &own_domain << 1u32 != ambient || aug != 2 * &own_domain {
            out.push(IdentityFailure { name: "augmented-doubling", index: i, lhs: aug, rhs: 2 * own_domain });
        }
    }
    out
}
