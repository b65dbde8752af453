use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Shape parameters outside s >= 1, m >= 0, k >= 1.
    InvalidShape,
    TooManyColumns(usize),
    /// A packed row has bits at or beyond the column count.
    StrayBits,
    ShapeMismatch,
    CoefficientsTooShort {
        needed: usize,
        got: usize,
    },
    /// Parameters outside the range where a formula is stated.
    OutOfRegime,
    /// Exhaustive work of 2^needed_bits exceeds the configured cap.
    BudgetExceeded {
        needed_bits: u32,
        budget_bits: u32,
    },
    /// A computed distribution failed a moment identity.
    MomentFailure {
        first_ok: bool,
        second_ok: bool,
    },
    /// An exact division that must be integral was not.
    NonIntegral,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape => f.write_str("shape needs s >= 1, m >= 0, k >= 1"),
            Error::TooManyColumns(c) => write!(f, "{c} columns exceed the 64-column word"),
            Error::StrayBits => f.write_str("row has bits beyond the column count"),
            Error::ShapeMismatch => f.write_str("matrix shapes do not fit"),
            Error::CoefficientsTooShort { needed, got } => {
                write!(f, "coefficient vector has {got} entries, {needed} needed")
            }
            Error::OutOfRegime => f.write_str("parameters outside the formula's regime"),
            Error::BudgetExceeded { needed_bits, budget_bits } => {
                write!(f, "needs 2^{needed_bits} steps, budget is 2^{budget_bits}")
            }
            Error::MomentFailure { first_ok, second_ok } => {
                write!(f, "moment identities failed (first ok: {first_ok}, second ok: {second_ok})")
            }
            Error::NonIntegral => f.write_str("count formula produced a non-integer"),
        }
    }
}

impl core::error::Error for Error {}
