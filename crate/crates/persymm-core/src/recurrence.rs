//! A second route to the rank counts: the row-deletion recurrence with its
//! remainder term, column-growth differences, and rank reductions.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::build::ShapeParams;
use crate::gamma::{boundary_above_top, boundary_square_next, gamma, gamma_s1};
use crate::Error;

/// Remainder term of the recurrence, with square-family counts from the closed forms.
pub fn delta_remainder(p: &ShapeParams, i: usize) -> Result<BigInt, Error> {
    delta_with(p, i, &mut |j| square_family(p, j, gamma))
}

/// Count of rank `j` for `s-1` rows over `s-1+m` rows with `j` columns.
fn square_family<F>(p: &ShapeParams, j: usize, mut g: F) -> BigInt
where
    F: FnMut(&ShapeParams, usize) -> BigInt,
{
    if j == 0 {
        return BigInt::from(1);
    }
    let q = ShapeParams { s: p.s - 1, m: p.m, k: j };
    g(&q, j)
}

/// Remainder term given `sq(j)`, the square-family count of rank `j`.
pub fn delta_with(p: &ShapeParams, i: usize, sq: &mut dyn FnMut(usize) -> BigInt) -> Result<BigInt, Error> {
    let n = p.total_rows();
    if p.s < 2 || i > n || p.k < i.max(1) {
        return Err(Error::OutOfRegime);
    }
    let k = p.k;
    let v = match i {
        0 => BigInt::from(1),
        1 if k == 1 => 4 * sq(1) - 3,
        1 => 4 * sq(1) - sq(2) - 3,
        2 if k >= 3 => 7 * sq(2) - 12 * sq(1) - sq(3) + 2,
        2 => 7 * sq(2) - 12 * sq(1) + 2,
        _ if i + 3 <= n => {
            let base = 7 * sq(i) - 14 * sq(i - 1) + 8 * sq(i - 2);
            if k > i {
                base - sq(i + 1)
            } else {
                base
            }
        }
        _ if i + 2 == n => 7 * sq(n - 2) - 14 * sq(n - 3) + 8 * sq(n - 4),
        _ if i + 1 == n => -14 * sq(n - 2) + 8 * sq(n - 3),
        _ => 8 * sq(n - 2),
    };
    Ok(v)
}

/// Count of pairs where the three nested stacks (drop the last top row and
/// the last bottom row, drop only the last bottom row, drop nothing) all
/// have rank `i`, from the square-family closed forms.
pub fn sigma_diagonal(p: &ShapeParams, i: usize) -> Result<BigInt, Error> {
    if p.s < 2 {
        return Err(Error::OutOfRegime);
    }
    let n = p.total_rows();
    let k = p.k;
    if i == 0 {
        return Ok(BigInt::from(1));
    }
    if i > (n - 2).min(k) {
        return Ok(BigInt::zero());
    }
    let sq = |j| square_family(p, j, gamma);
    Ok(if i < k && i + 3 <= n { 4 * sq(i) - sq(i + 1) } else { 4 * sq(i) })
}

/// Memoized evaluator of the recurrence down to one top row.
#[derive(Default)]
pub struct RecurrenceSolver {
    memo: BTreeMap<(usize, usize, usize, usize), BigInt>,
}

impl RecurrenceSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gamma(&mut self, p: &ShapeParams, i: usize) -> BigInt {
        if i > p.rank_bound() {
            return BigInt::zero();
        }
        if p.s == 1 {
            return gamma_s1(p.m, p.k, i);
        }
        let key = (p.s, p.m, p.k, i);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (s, m, k) = (p.s, p.m, p.k);
        let mut v = BigInt::zero();
        if i >= 1 {
            let fewer_top = ShapeParams::from_blocks(s - 1, s + m, k).unwrap();
            let fewer_bottom = ShapeParams::from_blocks(s, s + m - 1, k).unwrap();
            v += 2 * self.gamma(&fewer_top, i - 1) + 4 * self.gamma(&fewer_bottom, i - 1);
        }
        if i >= 2 {
            let both = ShapeParams { s: s - 1, m, k };
            v -= 8 * self.gamma(&both, i - 2);
        }
        let d =
            delta_with(p, i, &mut |j| square_family(p, j, |q, r| self.gamma(q, r))).expect("rank index within bounds");
        v += d;
        self.memo.insert(key, v.clone());
        v
    }
}

/// Rank count through the recurrence only; closed forms enter just at one top row.
pub fn gamma_via_recurrence(p: &ShapeParams, i: usize) -> BigInt {
    RecurrenceSolver::new().gamma(p, i)
}

/// `gamma(k+1, i) - gamma(k, i)` in closed form, where it is stated:
/// ranks below `s` with `k > i`, and ranks `s..=2s+m` with `k > i`.
pub fn gamma_difference(p: &ShapeParams, i: usize) -> Result<BigInt, Error> {
    let (s, m, k) = (p.s, p.m, p.k);
    if s < 2 || k <= i || i > 2 * s + m {
        return Err(Error::OutOfRegime);
    }
    if i < s {
        return Ok(BigInt::zero());
    }
    let j = i - s;
    let two = |e: usize| BigInt::from(1) << e;
    let v = match m {
        0 => match j {
            0 => 3 * two(k + s - 1),
            _ if j < s => 21 * two(k + s + 3 * j - 4),
            _ => 3 * two(2 * k + 2 * s - 2) - 3 * two(k + 4 * s - 4),
        },
        1 => match j {
            0 => two(k + s - 1),
            1 => 11 * two(k + s - 1),
            _ if j <= s => 21 * two(k + s + 3 * j - 5),
            _ => 3 * two(2 * k + 2 * s - 1) - 3 * two(k + 4 * s - 2),
        },
        _ => match j {
            0 => two(k + s - 1),
            _ if j < m => 3 * two(k + s + 2 * j - 3),
            _ if j == m => 11 * two(k + s + 2 * m - 3),
            _ if j < s + m => 21 * two(k + s + 2 * m + 3 * (j - m) - 4),
            _ => 3 * two(2 * k + 2 * s + m - 2) - 3 * two(k + 4 * s + 2 * m - 4),
        },
    };
    Ok(v)
}

/// Rank count for `s+1 <= i <= 2s+m`, `k >= i`, by reducing to rank `s+1`
/// of a shorter bottom block or to the next-to-bottom rank of a square family.
pub fn gamma_via_reduction(p: &ShapeParams, i: usize) -> Result<BigInt, Error> {
    let (s, m, k) = (p.s, p.m, p.k);
    if s < 2 || i < s + 1 || i > 2 * s + m || k < i {
        return Err(Error::OutOfRegime);
    }
    if i <= s + m {
        let j = i - s;
        let base = boundary_above_top(s, m - (j - 1), k - (j - 1))?;
        Ok(base << (3 * (j - 1)))
    } else {
        let j = i - s - m - 1;
        let base = boundary_square_next(s - j, k - m - 2 * j)?;
        Ok(base << (3 * (2 * j + m)))
    }
}
