//! Replayable verification suites.
//!
//! Every case is a pure function of the limits and its own RNG stream, so the
//! report is byte-identical across runs with the same seed, whatever the
//! thread count.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::SharedBernoulliCache;
use crate::sampling::{case_rng, CaseRng};

mod bernoulli;
mod cvs;
mod derivations;
mod ederivations;
pub mod mathieu;
mod oracle;
mod translation;

pub use oracle::linear_preimage;

pub const SUITES: [&str; 7] = [
    "bernoulli",
    "cvs",
    "derivations",
    "ederivations",
    "translation",
    "mathieu",
    "all",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub seed: u64,
    /// Random inputs per sampled case; oracle-agreement cases use 5/2 of it.
    pub samples: usize,
    /// Degree cap for random polynomials.
    pub max_degree: usize,
    /// Power window of the truncated Mathieu check.
    pub window: u32,
    pub bernoulli_max: usize,
    pub cvs_max: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            seed: 20_180_531,
            samples: 200,
            max_degree: 10,
            window: 12,
            bernoulli_max: 64,
            cvs_max: 400,
        }
    }
}

impl Limits {
    pub fn oracle_samples(&self) -> usize {
        self.samples * 5 / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub limits: Limits,
    pub cases: Vec<CaseReport>,
    pub totals: Totals,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn case(&self, id: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl std::fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unknown suite {:?}; expected one of {}", self.0, SUITES.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

pub(crate) struct Ctx<'a> {
    pub limits: &'a Limits,
    pub cache: &'a SharedBernoulliCache,
}

pub(crate) type Outcome = Result<String, String>;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Gate,
    Report,
}

pub(crate) struct Case {
    pub id: &'static str,
    pub kind: Kind,
    pub run: fn(&Ctx, &mut CaseRng) -> Outcome,
}

pub(crate) const fn gate(id: &'static str, run: fn(&Ctx, &mut CaseRng) -> Outcome) -> Case {
    Case { id, kind: Kind::Gate, run }
}

pub(crate) const fn report(id: &'static str, run: fn(&Ctx, &mut CaseRng) -> Outcome) -> Case {
    Case { id, kind: Kind::Report, run }
}

/// `Err(detail)` unless `cond`.
pub(crate) fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn suite_cases(name: &str) -> Result<Vec<Case>, UnknownSuite> {
    Ok(match name {
        "bernoulli" => bernoulli::cases(),
        "cvs" => cvs::cases(),
        "derivations" => derivations::cases(),
        "ederivations" => ederivations::cases(),
        "translation" => translation::cases(),
        "mathieu" => mathieu::cases(),
        "all" => SUITES[..SUITES.len() - 1]
            .iter()
            .flat_map(|s| suite_cases(s).expect("listed suite"))
            .collect(),
        other => return Err(UnknownSuite(other.to_string())),
    })
}

/// All case ids of a suite, sorted.
pub fn case_ids(suite: &str) -> Result<Vec<&'static str>, UnknownSuite> {
    let mut ids: Vec<_> = suite_cases(suite)?.iter().map(|c| c.id).collect();
    ids.sort_unstable();
    Ok(ids)
}

fn run_case(case: &Case, ctx: &Ctx) -> CaseReport {
    let mut rng = case_rng(ctx.limits.seed, case.id);
    let outcome = catch_unwind(AssertUnwindSafe(|| (case.run)(ctx, &mut rng)))
        .unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panic: {msg}"))
        });
    let (status, detail) = match (case.kind, outcome) {
        (Kind::Gate, Ok(d)) => (Status::Pass, d),
        (Kind::Report, Ok(d)) => (Status::ReportOnly, d),
        (_, Err(d)) => (Status::Fail, d),
    };
    CaseReport { id: case.id.to_string(), status, detail }
}

pub fn run_verify(suite: &str, limits: &Limits) -> Result<VerifyReport, UnknownSuite> {
    let cases = suite_cases(suite)?;
    let cache = SharedBernoulliCache::new();
    let ctx = Ctx { limits, cache: &cache };
    let mut reports: Vec<CaseReport> = cases.par_iter().map(|c| run_case(c, &ctx)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let mut totals = Totals::default();
    for r in &reports {
        match r.status {
            Status::Pass => totals.pass += 1,
            Status::Fail => totals.fail += 1,
            Status::ReportOnly => totals.report_only += 1,
        }
    }
    Ok(VerifyReport {
        suite: suite.to_string(),
        seed: limits.seed,
        limits: limits.clone(),
        cases: reports,
        totals,
    })
}
