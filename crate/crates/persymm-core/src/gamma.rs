//! Closed forms for the number of coefficient pairs whose stacked matrix has rank `i`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::build::ShapeParams;
use crate::exact::{dyadic, pow2};
use crate::Error;

/// Counts `counts[i]` of pairs with rank `i`, for `i` in `0..=rank_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDistribution {
    pub params: ShapeParams,
    pub counts: Vec<BigInt>,
}

impl RankDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Sum of counts equals `2^(2k+2s+m-2)`.
    pub fn first_moment_ok(&self) -> bool {
        let p = &self.params;
        self.total() == pow2(2 * p.k + 2 * p.s + p.m - 2)
    }

    /// `sum counts[i] * 2^(I-i+2) == 2^I * (2^(k+2s+m) + 2^(2k) - 2^k)` with `I` the rank bound.
    pub fn second_moment_ok(&self) -> bool {
        let p = &self.params;
        let top = p.rank_bound();
        if self.counts.len() != top + 1 {
            return false;
        }
        let lhs: BigInt = self.counts.iter().enumerate().map(|(i, c)| c << (top - i + 2)).sum();
        let rhs = (pow2(p.k + 2 * p.s + p.m) + pow2(2 * p.k) - pow2(p.k)) << top;
        lhs == rhs
    }

    pub fn check_moments(&self) -> Result<(), Error> {
        let (first_ok, second_ok) = (self.first_moment_ok(), self.second_moment_ok());
        if first_ok && second_ok && self.counts.iter().all(|c| !c.is_negative()) {
            Ok(())
        } else {
            Err(Error::MomentFailure { first_ok, second_ok })
        }
    }
}

/// Number of pairs of shape `p` whose stacked matrix has rank `i`.
pub fn gamma(p: &ShapeParams, i: usize) -> BigInt {
    if i > p.rank_bound() {
        return BigInt::zero();
    }
    if i == 0 {
        return BigInt::from(1);
    }
    if p.s == 1 {
        return gamma_s1(p.m, p.k, i);
    }
    let (s, m, k, i) = (p.s as i64, p.m as i64, p.k as i64, i as i64);
    if k > i {
        wide(s, m, k, i)
    } else {
        square(s, m, i)
    }
}

/// Values for `i <= s-1` shared by every `m` when `k > i`.
fn low_rank(i: i64) -> BigInt {
    dyadic(&[(21, 3 * i - 4), (-3, 2 * i - 3)])
}

fn wide(s: i64, m: i64, k: i64, i: i64) -> BigInt {
    if i < s {
        return low_rank(i);
    }
    match m {
        0 => {
            if i == s {
                dyadic(&[(3, k + s - 1), (21, 3 * s - 4), (-27, 2 * s - 3)])
            } else if i < 2 * s {
                dyadic(&[(21, k - 2 * s + 3 * i - 4), (21, 3 * i - 4), (-105, 4 * i - 2 * s - 5)])
            } else {
                dyadic(&[(1, 2 * k + 2 * s - 2), (-3, k + 4 * s - 4), (1, 6 * s - 5)])
            }
        }
        1 => {
            if i == s {
                dyadic(&[(1, k + s - 1), (21, 3 * s - 4), (-11, 2 * s - 3)])
            } else if i == s + 1 {
                dyadic(&[(11, k + s - 1), (21, 3 * s - 1), (-53, 2 * s - 1)])
            } else if i <= 2 * s {
                dyadic(&[(21, k - 2 * s + 3 * i - 5), (21, 3 * i - 4), (-105, 4 * i - 2 * s - 6)])
            } else {
                dyadic(&[(1, 2 * k + 2 * s - 1), (-3, k + 4 * s - 2), (1, 6 * s - 2)])
            }
        }
        _ => {
            if i == s {
                dyadic(&[(1, k + s - 1), (21, 3 * s - 4), (-11, 2 * s - 3)])
            } else if i < s + m {
                dyadic(&[(3, k - s + 2 * i - 3), (21, 3 * i - 4), (-21, 3 * i - s - 4)])
            } else if i == s + m {
                dyadic(&[(11, k + s + 2 * m - 3), (21, 3 * s + 3 * m - 4), (-53, 2 * s + 3 * m - 4)])
            } else if i < 2 * s + m {
                dyadic(&[(21, k - 2 * s + 3 * i - m - 4), (21, 3 * i - 4), (-105, 4 * i - 2 * s - m - 5)])
            } else {
                dyadic(&[(1, 2 * k + 2 * s + m - 2), (-3, k + 4 * s + 2 * m - 4), (1, 6 * s + 3 * m - 5)])
            }
        }
    }
}

/// The case `k == i`.
fn square(s: i64, m: i64, i: i64) -> BigInt {
    let lead = |e: i64| -> [(i64, i64); 2] { [(1, e), (-3, 3 * i - 4)] };
    let with = |e: i64, tail: (i64, i64)| {
        let [a, b] = lead(e);
        dyadic(&[a, b, tail])
    };
    match m {
        0 => {
            if i <= s {
                with(2 * s + 2 * i - 2, (1, 2 * i - 3))
            } else {
                with(2 * s + 2 * i - 2, (1, 4 * i - 2 * s - 5))
            }
        }
        1 => {
            if i <= s + 1 {
                with(2 * s + 2 * i - 1, (1, 2 * i - 3))
            } else {
                with(2 * s + 2 * i - 1, (1, 4 * i - 2 * s - 6))
            }
        }
        _ => {
            let e = 2 * s + 2 * i + m - 2;
            if i <= s + 1 {
                with(e, (1, 2 * i - 3))
            } else if i <= s + m + 1 {
                with(e, (1, 3 * i - s - 4))
            } else {
                with(e, (1, 4 * i - 2 * s - m - 5))
            }
        }
    }
}

/// Counts for one top row over `1 + big_m` bottom rows.
pub fn gamma_s1(big_m: usize, k: usize, i: usize) -> BigInt {
    if i > (2 + big_m).min(k) {
        return BigInt::zero();
    }
    if i == 0 {
        return BigInt::from(1);
    }
    let (mm, k, i) = (big_m as i64, k as i64, i as i64);
    if k == 1 {
        return dyadic(&[(1, mm + 2), (-1, 0)]);
    }
    if mm == 0 {
        return if i == 1 { dyadic(&[(3, k), (-3, 0)]) } else { dyadic(&[(1, 2 * k), (-3, k), (2, 0)]) };
    }
    if i == 1 {
        return dyadic(&[(1, k), (5, 0)]);
    }
    let middle = || dyadic(&[(3, k + 2 * i - 4), (21, 3 * i - 5)]);
    if k <= mm + 1 {
        if i < k {
            middle()
        } else {
            dyadic(&[(1, 2 * k + mm), (-5, 3 * k - 5)])
        }
    } else if i <= mm {
        middle()
    } else if i == mm + 1 {
        dyadic(&[(11, k + 2 * mm - 2), (-11, 3 * mm - 2)])
    } else {
        dyadic(&[(1, 2 * k + mm), (-3, k + 2 * mm), (1, 3 * mm + 1)])
    }
}

/// Closed-form distribution, checked against both moment identities.
pub fn gamma_distribution(p: &ShapeParams) -> Result<RankDistribution, Error> {
    distribution_with(p, gamma)
}

/// Distribution from any per-rank source, checked against both moment identities.
pub fn distribution_with<F>(p: &ShapeParams, f: F) -> Result<RankDistribution, Error>
where
    F: Fn(&ShapeParams, usize) -> BigInt,
{
    let counts = (0..=p.rank_bound()).map(|i| f(p, i)).collect();
    let d = RankDistribution { params: *p, counts };
    d.check_moments()?;
    Ok(d)
}

/// Rank `s+1` count for `s` rows over `s + big_m` rows with `kk` columns,
/// `big_m >= 1`, `kk >= s+1`. Seeds the reduction for ranks `s+1..=s+m`.
pub fn boundary_above_top(s: usize, big_m: usize, kk: usize) -> Result<BigInt, Error> {
    if s < 2 || big_m == 0 || kk < s + 1 {
        return Err(Error::OutOfRegime);
    }
    let (s, mm, kk) = (s as i64, big_m as i64, kk as i64);
    Ok(if kk == s + 1 {
        dyadic(&[(1, 4 * s + mm), (-3, 3 * s - 1), (1, 2 * s - 1)])
    } else if mm >= 2 {
        dyadic(&[(3, kk - 1 + s), (21, 3 * s - 1), (-21, 2 * s - 1)])
    } else {
        dyadic(&[(11, kk - 1 + s), (21, 3 * s - 1), (-53, 2 * s - 1)])
    })
}

/// Rank `r+1` count for the square family of `r` rows over `r` rows with
/// `kk >= r+1` columns. Seeds the reduction for ranks above `s+m`.
pub fn boundary_square_next(r: usize, kk: usize) -> Result<BigInt, Error> {
    if r == 0 || kk < r + 1 {
        return Err(Error::OutOfRegime);
    }
    let (r, kk) = (r as i64, kk as i64);
    Ok(if kk == r + 1 {
        dyadic(&[(1, 4 * r), (-3, 3 * r - 1), (1, 2 * r - 1)])
    } else if r >= 2 {
        dyadic(&[(21, kk + r - 1), (21, 3 * r - 1), (-105, 2 * r - 1)])
    } else {
        dyadic(&[(1, 2 * kk), (-3, kk), (2, 0)])
    })
}
