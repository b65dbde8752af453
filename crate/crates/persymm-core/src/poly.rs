//! Polynomials over F2 packed into a word, bit `j` = coefficient of `T^j`.

/// Carry-less product. The caller keeps `deg a + deg b < 64`.
#[inline]
pub fn clmul(mut a: u64, mut b: u64) -> u64 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

/// Degree of `a`, or `None` for the zero polynomial.
pub fn degree(a: u64) -> Option<u32> {
    if a == 0 {
        None
    } else {
        Some(63 - a.leading_zeros())
    }
}
