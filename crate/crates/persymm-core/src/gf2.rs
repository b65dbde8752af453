//! Dense GF(2) matrices with one machine word per row.

use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Widest supported column count.
pub const MAX_COLS: usize = 64;

#[inline]
fn col_mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

/// A rows x cols matrix over GF(2). Bit `j` of row `i` is entry (i, j).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, Error> {
        if cols > MAX_COLS {
            return Err(Error::TooManyColumns(cols));
        }
        Ok(BitMatrix { rows, cols, data: alloc::vec![0; rows] })
    }

    /// Builds from packed rows. Bits at or above `cols` are rejected.
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self, Error> {
        if cols > MAX_COLS {
            return Err(Error::TooManyColumns(cols));
        }
        let mask = col_mask(cols);
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::StrayBits);
        }
        Ok(BitMatrix { rows: rows.len(), cols, data: rows })
    }

    pub fn identity(n: usize) -> Result<Self, Error> {
        let rows = (0..n).map(|i| 1u64 << i).collect();
        Self::from_rows(n, rows)
    }

    /// Builds from nested 0/1 rows; every row must have length `cols`.
    pub fn from_bools(cols: usize, rows: &[Vec<bool>]) -> Result<Self, Error> {
        let mut packed = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch);
            }
            let mut w = 0u64;
            for (j, &b) in r.iter().enumerate() {
                if b {
                    w |= 1 << j;
                }
            }
            packed.push(w);
        }
        Self::from_rows(cols, packed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_words(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i] >> j & 1 == 1
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        rank_of_rows(&mut work)
    }

    /// Rows of `top` followed by rows of `bottom`.
    pub fn stack(top: &BitMatrix, bottom: &BitMatrix) -> Result<BitMatrix, Error> {
        if top.cols != bottom.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(BitMatrix { rows: data.len(), cols: top.cols, data })
    }

    /// Keeps the last `cols - n` columns.
    pub fn drop_leading_columns(&self, n: usize) -> Result<BitMatrix, Error> {
        if n > self.cols {
            return Err(Error::ShapeMismatch);
        }
        let data = self.data.iter().map(|r| if n >= 64 { 0 } else { r >> n }).collect();
        Ok(BitMatrix { rows: self.rows, cols: self.cols - n, data })
    }

    /// Keeps the first `n` columns.
    pub fn leading_columns(&self, n: usize) -> Result<BitMatrix, Error> {
        if n > self.cols {
            return Err(Error::ShapeMismatch);
        }
        let mask = col_mask(n);
        let data = self.data.iter().map(|r| r & mask).collect();
        Ok(BitMatrix { rows: self.rows, cols: n, data })
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> BitMatrix {
        let data: Vec<u64> = idx.iter().map(|&i| self.data[i]).collect();
        BitMatrix { rows: data.len(), cols: self.cols, data }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            for j in 0..self.cols {
                f.write_str(if r >> j & 1 == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Rank of packed rows, destroying the slice contents.
///
/// Each pass takes the last remaining nonzero row as pivot and clears its
/// lowest set bit from every other row.
#[inline]
pub fn rank_of_rows(rows: &mut [u64]) -> usize {
    let mut n = rows.len();
    let mut rank = 0;
    while n > 0 {
        n -= 1;
        let pivot = rows[n];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[..n].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}
