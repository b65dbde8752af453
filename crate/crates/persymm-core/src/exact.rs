//! Exact sums of terms `c * 2^e` with possibly negative exponents.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Sum of `c * 2^e` over `terms`. Panics if the sum is not an integer, which
/// would mean a formula was evaluated outside its regime.
pub fn dyadic(terms: &[(i64, i64)]) -> BigInt {
    let low = terms.iter().map(|&(_, e)| e).min().unwrap_or(0).min(0);
    let mut acc = BigInt::zero();
    for &(c, e) in terms {
        acc += BigInt::from(c) << ((e - low) as usize);
    }
    if low < 0 {
        let sh = (-low) as usize;
        let rem: BigInt = &acc & ((BigInt::one() << sh) - 1);
        assert!(rem.is_zero(), "dyadic sum is not an integer");
        acc >>= sh;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_exponents_cancel() {
        // 21 * 2^-1 - 3 * 2^-1 = 9
        assert_eq!(dyadic(&[(21, -1), (-3, -1)]), BigInt::from(9));
        assert_eq!(dyadic(&[(3, 4), (-1, 0)]), BigInt::from(47));
        assert_eq!(dyadic(&[]), BigInt::zero());
        assert_eq!(dyadic(&[(-5, 2)]), BigInt::from(-20));
    }

    #[test]
    #[should_panic]
    fn fraction_panics() {
        dyadic(&[(1, -1)]);
    }
}
