//! Shape parameters, coefficient pairs and the persymmetric matrix families.
//!
//! Coefficients are 1-based everywhere in this crate's API: `alpha_1` is the
//! first entry. Storage is a single word per vector with `alpha_t` at bit
//! `t - 1`; the translation happens only here.

use alloc::vec::Vec;

use crate::gf2::{BitMatrix, MAX_COLS};
use crate::Error;

/// Top block has `s` rows, bottom block `s + m` rows, both with `k` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeParams {
    pub s: usize,
    pub m: usize,
    pub k: usize,
}

impl ShapeParams {
    pub fn new(s: usize, m: usize, k: usize) -> Result<Self, Error> {
        if s == 0 || k == 0 {
            return Err(Error::InvalidShape);
        }
        Ok(ShapeParams { s, m, k })
    }

    /// Shape for a stack of `a` top rows over `b` bottom rows. Since row order
    /// does not affect rank, `a > b` is folded onto `(b, a - b)`.
    pub fn from_blocks(a: usize, b: usize, k: usize) -> Result<Self, Error> {
        Self::new(a.min(b), a.abs_diff(b), k)
    }

    pub fn total_rows(&self) -> usize {
        2 * self.s + self.m
    }

    pub fn rank_bound(&self) -> usize {
        self.total_rows().min(self.k)
    }

    pub fn alpha_len(&self) -> usize {
        self.k + self.s - 1
    }

    pub fn beta_len(&self) -> usize {
        self.k + self.s + self.m - 1
    }

    /// log2 of the number of coefficient pairs.
    pub fn pair_bits(&self) -> usize {
        self.alpha_len() + self.beta_len()
    }

    pub fn with_k(&self, k: usize) -> Result<Self, Error> {
        Self::new(self.s, self.m, k)
    }
}

/// A bit vector of at most 64 entries, indexed from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coeffs {
    len: usize,
    word: u64,
}

impl Coeffs {
    pub fn from_word(len: usize, word: u64) -> Result<Self, Error> {
        if len > 64 {
            return Err(Error::TooManyColumns(len));
        }
        if len < 64 && word >> len != 0 {
            return Err(Error::StrayBits);
        }
        Ok(Coeffs { len, word })
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self, Error> {
        let mut word = 0u64;
        for (t, &b) in bits.iter().enumerate().take(64) {
            if b {
                word |= 1 << t;
            }
        }
        Self::from_word(bits.len(), word)
    }

    pub fn zero(len: usize) -> Result<Self, Error> {
        Self::from_word(len, 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    /// Entry `t`, 1-based.
    pub fn get(&self, t: usize) -> bool {
        assert!(t >= 1 && t <= self.len, "coefficient index {t} out of 1..={}", self.len);
        self.word >> (t - 1) & 1 == 1
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (1..=self.len).map(|t| self.get(t)).collect()
    }
}

/// Truncated coefficient vectors of the two Laurent series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientPair {
    pub alpha: Coeffs,
    pub beta: Coeffs,
}

impl CoefficientPair {
    pub fn new(p: &ShapeParams, alpha: Coeffs, beta: Coeffs) -> Result<Self, Error> {
        if alpha.len() != p.alpha_len() || beta.len() != p.beta_len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(CoefficientPair { alpha, beta })
    }

    pub fn from_words(p: &ShapeParams, alpha: u64, beta: u64) -> Result<Self, Error> {
        Self::new(p, Coeffs::from_word(p.alpha_len(), alpha)?, Coeffs::from_word(p.beta_len(), beta)?)
    }

    pub fn from_bools(p: &ShapeParams, alpha: &[bool], beta: &[bool]) -> Result<Self, Error> {
        Self::new(p, Coeffs::from_bools(alpha)?, Coeffs::from_bools(beta)?)
    }

    pub fn zero(p: &ShapeParams) -> Result<Self, Error> {
        Self::from_words(p, 0, 0)
    }
}

#[inline]
pub(crate) fn mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

/// Writes the rows of a Hankel block into `out`: row `i` (0-based) holds
/// coefficients `offset + i ..` as columns `0..cols`. No bounds checks.
#[inline]
pub fn hankel_rows_into(word: u64, offset: usize, cols: usize, out: &mut [u64]) {
    let m = mask(cols);
    for (i, r) in out.iter_mut().enumerate() {
        let sh = offset - 1 + i;
        *r = if sh >= 64 { 0 } else { (word >> sh) & m };
    }
}

/// Persymmetric `rows x cols` matrix with entry (i, j) = `coeffs[offset + i + j - 2]`, 1-based.
pub fn persymmetric(coeffs: &Coeffs, rows: usize, cols: usize, offset: usize) -> Result<BitMatrix, Error> {
    if offset == 0 {
        return Err(Error::OutOfRegime);
    }
    if cols > MAX_COLS {
        return Err(Error::TooManyColumns(cols));
    }
    if rows > 0 && cols > 0 {
        let needed = offset + rows + cols - 2;
        if coeffs.len() < needed {
            return Err(Error::CoefficientsTooShort { needed, got: coeffs.len() });
        }
    }
    let mut data = alloc::vec![0u64; rows];
    if cols > 0 {
        hankel_rows_into(coeffs.word(), offset, cols, &mut data);
    }
    BitMatrix::from_rows(cols, data)
}

/// First `a` alpha rows stacked over the first `b` beta rows, `cols` columns wide.
pub fn stacked_prefix(c: &CoefficientPair, a: usize, b: usize, cols: usize) -> Result<BitMatrix, Error> {
    let top = persymmetric(&c.alpha, a, cols, 1)?;
    let bottom = persymmetric(&c.beta, b, cols, 1)?;
    BitMatrix::stack(&top, &bottom)
}

/// The `(2s+m) x k` matrix with `s` alpha rows over `s+m` beta rows.
pub fn double_persymmetric(p: &ShapeParams, c: &CoefficientPair) -> Result<BitMatrix, Error> {
    check_pair(p, c)?;
    stacked_prefix(c, p.s, p.s + p.m, p.k)
}

/// The `(2s+m-1) x k` matrix: `s-1` alpha rows, `s+m-1` beta rows, and a last
/// row whose entry `j` is `alpha_{s+j-1} + beta_{s+m+j-1}` (1-based `j`).
pub fn augmented_sum_row_matrix(p: &ShapeParams, c: &CoefficientPair) -> Result<BitMatrix, Error> {
    if p.s < 2 {
        return Err(Error::OutOfRegime);
    }
    check_pair(p, c)?;
    let head = stacked_prefix(c, p.s - 1, p.s + p.m - 1, p.k)?;
    let last = augmented_row(p, c.alpha.word(), c.beta.word());
    let tail = BitMatrix::from_rows(p.k, alloc::vec![last])?;
    BitMatrix::stack(&head, &tail)
}

/// Packed last row of the augmented matrix.
#[inline]
pub fn augmented_row(p: &ShapeParams, alpha: u64, beta: u64) -> u64 {
    let m = mask(p.k);
    ((alpha >> (p.s - 1)) ^ (beta >> (p.s + p.m - 1))) & m
}

fn check_pair(p: &ShapeParams, c: &CoefficientPair) -> Result<(), Error> {
    if c.alpha.len() != p.alpha_len() || c.beta.len() != p.beta_len() {
        return Err(Error::ShapeMismatch);
    }
    if p.k > MAX_COLS {
        return Err(Error::TooManyColumns(p.k));
    }
    Ok(())
}
