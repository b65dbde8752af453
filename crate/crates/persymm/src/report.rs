//! CSV and JSON renderings. Counts are always decimal strings.

use serde::{Deserialize, Serialize};

use crate::table::GammaTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub s: usize,
    pub m: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentChecks {
    pub first_moment: bool,
    pub second_moment: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub params: Params,
    pub method: String,
    /// Rank index of each entry of `counts`.
    pub ranks: Vec<usize>,
    pub counts: Vec<String>,
    pub checks: MomentChecks,
}

impl From<&GammaTable> for GammaReport {
    fn from(t: &GammaTable) -> Self {
        GammaReport {
            params: Params { s: t.params.s, m: t.params.m, k: t.params.k },
            method: t.method.name().to_string(),
            ranks: t.rows.iter().map(|r| r.i).collect(),
            counts: t.rows.iter().map(|r| r.count.to_string()).collect(),
            checks: MomentChecks { first_moment: t.first_moment_ok, second_moment: t.second_moment_ok },
        }
    }
}

pub const GAMMA_CSV_HEADER: &str = "s,m,k,i,gamma,method";

/// One line per rank; the method column names the route that produced the row.
pub fn gamma_csv(t: &GammaTable) -> String {
    let (s, m, k) = (t.params.s, t.params.m, t.params.k);
    let mut out = String::from(GAMMA_CSV_HEADER);
    out.push('\n');
    for r in &t.rows {
        out.push_str(&format!("{s},{m},{k},{},{},{}\n", r.i, r.count, r.route.name()));
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn gamma_json(t: &GammaTable) -> String {
    to_json(&GammaReport::from(t))
}

pub fn render_gamma(t: &GammaTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => gamma_csv(t),
        OutputFormat::Json => gamma_json(t),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub q: usize,
    pub params: Params,
    pub method: String,
    pub count: String,
}

pub const COUNT_CSV_HEADER: &str = "q,s,m,k,count,method";

pub fn count_csv(r: &CountReport) -> String {
    format!("{COUNT_CSV_HEADER}\n{},{},{},{},{},{}\n", r.q, r.params.s, r.params.m, r.params.k, r.count, r.method)
}
