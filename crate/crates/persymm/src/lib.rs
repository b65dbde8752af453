//! Parallel enumeration drivers, reports, a verification sweep and the
//! command-line front end over [`persymm_core`].

pub mod cli;
pub mod parallel;
pub mod report;
pub mod table;
pub mod verify;

pub use table::{gamma_table, GammaMethod, GammaTable};
pub use verify::{run_verify, SweepConfig, VerifyReport};
