//! Rank-count tables computed by a chosen method.

use num_bigint::BigInt;
use persymm_core::recurrence::{gamma_via_reduction, RecurrenceSolver};
use persymm_core::{gamma, Error, RankDistribution, ShapeParams};
use serde::{Deserialize, Serialize};

use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GammaMethod {
    ClosedForm,
    Recurrence,
    /// Rank reductions where they apply, the recurrence elsewhere.
    Reduction,
    /// Exhaustive enumeration.
    Oracle,
}

impl GammaMethod {
    pub const ALL: [GammaMethod; 4] =
        [GammaMethod::ClosedForm, GammaMethod::Recurrence, GammaMethod::Reduction, GammaMethod::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            GammaMethod::ClosedForm => "closed-form",
            GammaMethod::Recurrence => "recurrence",
            GammaMethod::Reduction => "reduction",
            GammaMethod::Oracle => "oracle",
        }
    }
}

/// One entry and the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRow {
    pub i: usize,
    pub count: BigInt,
    pub route: GammaMethod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    pub params: ShapeParams,
    pub method: GammaMethod,
    pub rows: Vec<GammaRow>,
    pub first_moment_ok: bool,
    pub second_moment_ok: bool,
}

impl GammaTable {
    pub fn counts(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.count.clone()).collect()
    }

    pub fn moments_ok(&self) -> bool {
        self.first_moment_ok && self.second_moment_ok
    }

    /// Keeps only rank `i`; ranks past the bound get an explicit zero row.
    pub fn only(mut self, i: usize) -> Self {
        let route = self.method;
        let row = self.rows.iter().find(|r| r.i == i).cloned();
        self.rows = vec![row.unwrap_or(GammaRow { i, count: BigInt::from(0), route })];
        self
    }
}

/// Full table `0..=rank_bound` by `method`.
pub fn gamma_table(
    p: &ShapeParams,
    method: GammaMethod,
    budget_bits: u32,
    workers: usize,
) -> Result<GammaTable, Error> {
    let top = p.rank_bound();
    let rows: Vec<GammaRow> = match method {
        GammaMethod::ClosedForm => (0..=top).map(|i| GammaRow { i, count: gamma(p, i), route: method }).collect(),
        GammaMethod::Recurrence => {
            let mut solver = RecurrenceSolver::new();
            (0..=top).map(|i| GammaRow { i, count: solver.gamma(p, i), route: method }).collect()
        }
        GammaMethod::Reduction => {
            let mut solver = RecurrenceSolver::new();
            (0..=top)
                .map(|i| match gamma_via_reduction(p, i) {
                    Ok(count) => GammaRow { i, count, route: GammaMethod::Reduction },
                    Err(_) => GammaRow { i, count: solver.gamma(p, i), route: GammaMethod::Recurrence },
                })
                .collect()
        }
        GammaMethod::Oracle => {
            let d = parallel::rank_distribution(p, budget_bits, workers)?;
            d.counts.into_iter().enumerate().map(|(i, count)| GammaRow { i, count, route: method }).collect()
        }
    };
    let d = RankDistribution { params: *p, counts: rows.iter().map(|r| r.count.clone()).collect() };
    Ok(GammaTable {
        params: *p,
        method,
        first_moment_ok: d.first_moment_ok(),
        second_moment_ok: d.second_moment_ok(),
        rows,
    })
}
