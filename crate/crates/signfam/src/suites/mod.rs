//! Named verification suites.

mod counting;
mod extremal;
mod structure;

use std::time::Duration;

use signfam_core::solver::{solve_extremal, Deadline, Status, Target};
use signfam_core::{Profile, VectorFamily};

use crate::cache::{cache_key, CachedStatus, ResultCache};
use crate::report::VerificationReport;

pub const SUITES: &[&str] = &[
    "theorem1",
    "eq111",
    "bounds",
    "lemma1",
    "dichotomy",
    "lemma3",
    "biregular",
    "ratios",
    "precedes",
    "constructions",
    "solver-oracle",
    "p-increment",
];

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`; expected one of: {list}", list = SUITES.join(", "))]
    Unknown(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Core(#[from] signfam_core::Error),
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub seed: u64,
    /// Overrides the suite's default trial count.
    pub trials: Option<usize>,
    /// Restricts profile-driven suites to one profile.
    pub profile: Option<Profile>,
    /// Overrides the suite's default per-instance solver budget.
    pub budget: Option<Duration>,
    pub shift_pruning: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: None,
            profile: None,
            budget: None,
            shift_pruning: true,
        }
    }
}

/// One solver outcome; the witness is absent when the value came from the cache.
#[derive(Debug, Clone)]
pub struct Solved {
    pub value: usize,
    pub status: Status,
    pub witness: Option<VectorFamily>,
}

pub struct Runner<'a> {
    pub params: &'a SuiteParams,
    pub cache: &'a mut ResultCache,
}

impl Runner<'_> {
    fn budget_or(&self, default_secs: u64) -> Duration {
        self.params.budget.unwrap_or(Duration::from_secs(default_secs))
    }

    /// Solves through the cache. Exact cached values are reused; anything
    /// else is recomputed and recorded.
    pub fn solve(&mut self, p: Profile, target: Target, budget: Duration) -> Result<Solved, SuiteError> {
        let pruning = self.params.shift_pruning && target == Target::G;
        let key = cache_key(p, target, pruning);
        if let Some(e) = self.cache.get(&key) {
            if e.status == CachedStatus::Exact {
                return Ok(Solved {
                    value: e.value,
                    status: Status::Exact,
                    witness: None,
                });
            }
        }
        let r = solve_extremal(p, target, &mut Deadline::new(budget), pruning)?;
        self.cache.record(key, r.value, r.status.into());
        Ok(Solved {
            value: r.value,
            status: r.status,
            witness: Some(r.witness),
        })
    }
}

/// Profiles with `k > l >= 1` in dimension `n`.
pub fn extremal_profiles(n: usize) -> impl Iterator<Item = Profile> {
    (2..=n).flat_map(move |k| (1..k.min(n - k + 1)).filter_map(move |l| Profile::new(n, k, l).ok()))
}

/// Every profile in dimension `n`, including `l = 0`.
pub fn all_profiles(n: usize) -> impl Iterator<Item = Profile> {
    (1..=n).flat_map(move |k| (0..=n - k).filter_map(move |l| Profile::new(n, k, l).ok()))
}

fn inputs(p: Profile) -> String {
    format!("n={} k={} l={}", p.n, p.k, p.l)
}

pub fn run_suite(name: &str, params: &SuiteParams, cache: &mut ResultCache) -> Result<VerificationReport, SuiteError> {
    let mut r = Runner { params, cache };
    let report = match name {
        "theorem1" => extremal::theorem1(&mut r)?,
        "eq111" => extremal::eq111(&mut r)?,
        "bounds" => extremal::bounds(&mut r)?,
        "dichotomy" => extremal::dichotomy(&mut r)?,
        "solver-oracle" => extremal::solver_oracle(&r)?,
        "lemma1" => structure::lemma1(&r)?,
        "precedes" => structure::precedes(&r)?,
        "constructions" => structure::constructions(&r)?,
        "lemma3" => counting::lemma3(&r)?,
        "biregular" => counting::biregular(&r)?,
        "ratios" => counting::ratios(&r)?,
        "p-increment" => counting::p_increment(&r)?,
        other => return Err(SuiteError::Unknown(other.to_string())),
    };
    Ok(report)
}

/// Runs every suite in order, stopping at the first parameter error.
pub fn run_all(params: &SuiteParams, cache: &mut ResultCache) -> Result<Vec<VerificationReport>, SuiteError> {
    SUITES.iter().map(|s| run_suite(s, params, cache)).collect()
}
