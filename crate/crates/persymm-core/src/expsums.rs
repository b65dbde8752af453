//! Quadratic character sums over bounded-degree polynomial triples.
//!
//! Each sum is `sum_Y sum_Z E(t Y Z) * sum_U E(eta Y U)` where `E` reads the
//! `T^-1` coefficient and the three ranges are picked by [`Selector`]s.

use crate::build::{augmented_sum_row_matrix, stacked_prefix, CoefficientPair, Coeffs, ShapeParams};
use crate::poly::clmul;
use crate::Error;

/// log2 cap on per-pair work of [`exp_sum_direct`].
pub const DIRECT_WORK_BITS: usize = 24;

/// A polynomial range by degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    /// `deg <= d`, including zero. Negative `d` leaves only zero.
    AtMost(isize),
    /// `deg == d`: the `2^d` polynomials with leading term `T^d`. Negative `d` is empty.
    Exactly(isize),
}

impl Selector {
    /// Range of packed polynomials.
    pub fn words(self) -> core::ops::Range<u64> {
        match self {
            Selector::AtMost(d) if d < 0 => 0..1,
            Selector::AtMost(d) => 0..1u64 << (d + 1),
            Selector::Exactly(d) if d < 0 => 0..0,
            Selector::Exactly(d) => 1u64 << d..1u64 << (d + 1),
        }
    }

    /// Highest degree a member can have, or -1.
    pub fn max_degree(self) -> isize {
        match self {
            Selector::AtMost(d) | Selector::Exactly(d) => d.max(-1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumKind {
    G,
    G1,
    G2,
    F1,
    F2,
    H,
    V,
    Psi,
    Phi,
    Phi1,
    Phi2,
    Theta1,
    Theta2,
    Theta3,
}

impl SumKind {
    pub const ALL: [SumKind; 14] = [
        SumKind::G,
        SumKind::G1,
        SumKind::G2,
        SumKind::F1,
        SumKind::F2,
        SumKind::H,
        SumKind::V,
        SumKind::Psi,
        SumKind::Phi,
        SumKind::Phi1,
        SumKind::Phi2,
        SumKind::Theta1,
        SumKind::Theta2,
        SumKind::Theta3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SumKind::G => "g",
            SumKind::G1 => "g1",
            SumKind::G2 => "g2",
            SumKind::F1 => "f1",
            SumKind::F2 => "f2",
            SumKind::H => "h",
            SumKind::V => "v",
            SumKind::Psi => "psi",
            SumKind::Phi => "phi",
            SumKind::Phi1 => "phi1",
            SumKind::Phi2 => "phi2",
            SumKind::Theta1 => "theta1",
            SumKind::Theta2 => "theta2",
            SumKind::Theta3 => "theta3",
        }
    }

    /// Ranges for (Y, Z, U).
    pub fn selectors(self, p: &ShapeParams) -> [Selector; 3] {
        use Selector::{AtMost as Le, Exactly as Eq};
        let (s, m, k) = (p.s as isize, p.m as isize, p.k as isize);
        let (y, z, u) = (k - 1, s - 1, s + m - 1);
        match self {
            SumKind::G => [Le(y), Le(z), Le(u)],
            SumKind::G1 => [Le(y), Eq(z), Le(u)],
            SumKind::G2 => [Le(y), Le(z), Eq(u)],
            SumKind::F1 => [Le(y), Eq(z), Le(u - 1)],
            SumKind::F2 => [Le(y), Le(z - 1), Eq(u)],
            SumKind::H => [Le(y), Eq(z), Eq(u)],
            SumKind::V => [Le(y), Le(z - 1), Le(u - 1)],
            SumKind::Psi => [Eq(y), Le(z), Le(u)],
            SumKind::Phi => [Eq(y), Le(z), Eq(u)],
            SumKind::Phi1 => [Eq(y), Le(z), Le(u - 1)],
            SumKind::Phi2 | SumKind::Theta2 => [Le(y - 1), Le(z), Eq(u)],
            SumKind::Theta1 => [Eq(y), Eq(z), Le(u - 1)],
            SumKind::Theta3 => [Le(y - 1), Eq(z), Le(u - 1)],
        }
    }
}

/// The `T^-1` coefficient of `{t * P}`: XOR over `j` of `coeffs_{j+1} * P_j`.
pub fn residue_bit(coeffs: &Coeffs, poly: u64) -> Result<bool, Error> {
    let needed = 64 - poly.leading_zeros() as usize;
    if needed > coeffs.len() {
        return Err(Error::CoefficientsTooShort { needed, got: coeffs.len() });
    }
    Ok((coeffs.word() & poly).count_ones() & 1 == 1)
}

#[inline]
fn character(coeffs: u64, poly: u64) -> i128 {
    if (coeffs & poly).count_ones() & 1 == 1 {
        -1
    } else {
        1
    }
}

/// The triple sum evaluated term by term.
pub fn exp_sum_direct(kind: SumKind, p: &ShapeParams, c: &CoefficientPair) -> Result<i128, Error> {
    if c.alpha.len() != p.alpha_len() || c.beta.len() != p.beta_len() {
        return Err(Error::ShapeMismatch);
    }
    let work = p.k + p.s + p.m + 1;
    if work > DIRECT_WORK_BITS {
        return Err(Error::BudgetExceeded { needed_bits: work as u32, budget_bits: DIRECT_WORK_BITS as u32 });
    }
    let [ys, zs, us] = kind.selectors(p);
    let (a, b) = (c.alpha.word(), c.beta.word());
    let mut total = 0i128;
    for y in ys.words() {
        let sz: i128 = zs.words().map(|z| character(a, clmul(y, z))).sum();
        if sz == 0 {
            continue;
        }
        let su: i128 = us.words().map(|u| character(b, clmul(y, u))).sum();
        total += sz * su;
    }
    Ok(total)
}

fn pow2(e: usize) -> Result<i128, Error> {
    if e >= 127 {
        return Err(Error::OutOfRegime);
    }
    Ok(1i128 << e)
}

/// The same sum computed from ranks of stacked prefixes.
pub fn exp_sum_rank_formula(kind: SumKind, p: &ShapeParams, c: &CoefficientPair) -> Result<i128, Error> {
    if c.alpha.len() != p.alpha_len() || c.beta.len() != p.beta_len() {
        return Err(Error::ShapeMismatch);
    }
    if kind != SumKind::G && p.s < 2 {
        return Err(Error::OutOfRegime);
    }
    let (s, m, k) = (p.s, p.m, p.k);
    let n = 2 * s + m + k;
    let r = |a: usize, b: usize, cols: usize| -> Result<usize, Error> { Ok(stacked_prefix(c, a, b, cols)?.rank()) };
    let when = |cond: bool, e: usize| -> Result<i128, Error> {
        if cond {
            pow2(e)
        } else {
            Ok(0)
        }
    };
    match kind {
        SumKind::G => pow2(n - r(s, s + m, k)?),
        SumKind::G1 => {
            let full = r(s, s + m, k)?;
            when(r(s - 1, s + m, k)? == full, n - 1 - full)
        }
        SumKind::G2 => {
            let full = r(s, s + m, k)?;
            when(r(s, s + m - 1, k)? == full, n - 1 - full)
        }
        SumKind::F1 => {
            let inner = r(s - 1, s + m - 1, k)?;
            when(r(s, s + m - 1, k)? == inner, n - 2 - inner)
        }
        SumKind::F2 => {
            let inner = r(s - 1, s + m - 1, k)?;
            when(r(s - 1, s + m, k)? == inner, n - 2 - inner)
        }
        SumKind::H => {
            let inner = r(s - 1, s + m - 1, k)?;
            let aug = augmented_sum_row_matrix(p, c)?.rank();
            when(aug == inner, n - 2 - inner)
        }
        SumKind::V => pow2(n - 2 - r(s - 1, s + m - 1, k)?),
        SumKind::Psi => {
            let full = r(s, s + m, k)?;
            when(r(s, s + m, k - 1)? == full, n - 1 - full)
        }
        SumKind::Phi => {
            let steps = [r(s, s + m - 1, k - 1)?, r(s, s + m - 1, k)?, r(s, s + m, k - 1)?, r(s, s + m, k)?];
            signed_step(steps, n - 2)
        }
        SumKind::Phi1 => {
            let wide = r(s, s + m - 1, k)?;
            when(r(s, s + m - 1, k - 1)? == wide, n - 2 - wide)
        }
        SumKind::Phi2 | SumKind::Theta2 => {
            let narrow = r(s, s + m, k - 1)?;
            when(r(s, s + m - 1, k - 1)? == narrow, n - 2 - narrow)
        }
        SumKind::Theta1 => {
            let steps =
                [r(s - 1, s + m - 1, k - 1)?, r(s - 1, s + m - 1, k)?, r(s, s + m - 1, k - 1)?, r(s, s + m - 1, k)?];
            signed_step(steps, n - 3)
        }
        SumKind::Theta3 => {
            let narrow = r(s - 1, s + m - 1, k - 1)?;
            when(r(s, s + m - 1, k - 1)? == narrow, n - 3 - narrow)
        }
    }
}

/// `+2^(e-j)` if all four ranks equal `j`; `-2^(e-j)` if the first three equal
/// `j` and the last is `j+1`; zero otherwise.
fn signed_step(r: [usize; 4], e: usize) -> Result<i128, Error> {
    let j = r[0];
    if r[1] != j || r[2] != j {
        return Ok(0);
    }
    if r[3] == j {
        pow2(e - j)
    } else if r[3] == j + 1 {
        Ok(-pow2(e - j)?)
    } else {
        Ok(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: usize, m: usize, k: usize) -> ShapeParams {
        ShapeParams::new(s, m, k).unwrap()
    }

    #[test]
    fn residue_examples() {
        let c = Coeffs::from_bools(&[true, false, true]).unwrap();
        assert!(!residue_bit(&c, 0).unwrap());
        assert!(residue_bit(&c, 1).unwrap());
        let c2 = Coeffs::from_bools(&[false, true]).unwrap();
        assert!(residue_bit(&c2, 0b10).unwrap());
        assert!(residue_bit(&c2, 0b100).is_err());
    }

    #[test]
    fn zero_pair_counts_everything() {
        let p = shape(2, 1, 3);
        let z = CoefficientPair::zero(&p).unwrap();
        assert_eq!(exp_sum_direct(SumKind::G, &p, &z).unwrap(), 1i128 << (4 + 1 + 3));
    }

    #[test]
    fn selector_ranges() {
        assert_eq!(Selector::AtMost(-1).words(), 0..1);
        assert_eq!(Selector::AtMost(2).words(), 0..8);
        assert_eq!(Selector::Exactly(0).words(), 1..2);
        assert_eq!(Selector::Exactly(2).words(), 4..8);
        assert!(Selector::Exactly(-1).words().is_empty());
    }

    #[test]
    fn phi_negative_branch_occurs() {
        let p = shape(2, 0, 3);
        let mut seen = false;
        for a in 0..1u64 << p.alpha_len() {
            for b in 0..1u64 << p.beta_len() {
                let c = CoefficientPair::from_words(&p, a, b).unwrap();
                let v = exp_sum_rank_formula(SumKind::Phi, &p, &c).unwrap();
                if v < 0 {
                    seen = true;
                    assert_eq!(v, exp_sum_direct(SumKind::Phi, &p, &c).unwrap());
                }
            }
        }
        assert!(seen);
    }

    #[test]
    fn h_vanishes_off_condition() {
        let p = shape(2, 0, 2);
        for a in 0..1u64 << p.alpha_len() {
            for b in 0..1u64 << p.beta_len() {
                let c = CoefficientPair::from_words(&p, a, b).unwrap();
                let inner = stacked_prefix(&c, 1, 1, 2).unwrap().rank();
                let aug = augmented_sum_row_matrix(&p, &c).unwrap().rank();
                if inner != aug {
                    assert_eq!(exp_sum_direct(SumKind::H, &p, &c).unwrap(), 0);
                }
            }
        }
    }
}
