//! Rank counts for two stacked persymmetric matrices over GF(2).
//!
//! A pair of truncated Laurent coefficient vectors `(alpha, beta)` defines an
//! `s x k` Hankel block over an `(s+m) x k` Hankel block. This crate counts
//! pairs by rank in closed form, by a row-deletion recurrence, by rank
//! reductions, and by exhaustive enumeration. It also evaluates the matching
//! character sums and counts solutions of paired bilinear equations in F2[T].

#![no_std]

extern crate alloc;

pub mod build;
mod error;
pub mod exact;
pub mod expsums;
pub mod gamma;
pub mod gf2;
pub mod oracle;
pub mod poly;
pub mod recurrence;
pub mod solutions;

pub use build::{CoefficientPair, Coeffs, ShapeParams};
pub use error::Error;
pub use gamma::{gamma, gamma_distribution, gamma_s1, RankDistribution};
pub use gf2::BitMatrix;
pub use oracle::{JointRankStats, StatKind};
pub use solutions::SolutionCountQuery;
