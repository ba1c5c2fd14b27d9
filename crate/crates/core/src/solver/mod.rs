//! Conflict graphs and exact maximum-independent-set search for
//! `g(n,k,l)` (no product `-2l`) and `m(n,k,l)` (no negative product).

use alloc::vec::Vec;
use core::time::Duration;

use crate::error::{Error, Result};
use crate::vector::{Profile, VectorFamily};

pub mod bitset;
pub mod branch;
pub mod bruteforce;
pub mod graph;
pub mod shifted;
pub mod verify;

pub use branch::mis_exact;
pub use bruteforce::{mis_bruteforce, BRUTEFORCE_MAX_VERTICES};
pub use graph::{
    build_conflict_graph, build_conflict_graph_capped, AdjacencyGraph, ConflictGraph, ForbiddenSpec, DEFAULT_VERTEX_CAP,
};
pub use shifted::mis_shifted;
pub use verify::{verify_family, FamilyCheck, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    /// The budget ran out; the value is the best found so far.
    LowerBoundTimeout,
}

/// Search outcome over raw vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisResult {
    pub value: usize,
    pub vertices: Vec<usize>,
    pub status: Status,
    pub nodes_explored: u64,
    pub elapsed: Option<Duration>,
}

/// Search outcome with the witness as a vector family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VectorFamily,
    pub status: Status,
    pub nodes_explored: u64,
    pub elapsed: Option<Duration>,
}

/// Decides when a search stops early.
pub trait Budget {
    /// Polled periodically with the number of nodes explored so far.
    fn exhausted(&mut self, nodes: u64) -> bool;

    fn elapsed(&self) -> Option<Duration> {
        None
    }
}

/// Never stops.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self, _: u64) -> bool {
        false
    }
}

/// Stops once the node count reaches the limit.
#[derive(Debug, Clone, Copy)]
pub struct NodeLimit(pub u64);

impl Budget for NodeLimit {
    fn exhausted(&mut self, nodes: u64) -> bool {
        nodes >= self.0
    }
}

/// Wall-clock limit measured from construction.
#[cfg(feature = "std")]
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: std::time::Instant,
    limit: Duration,
}

#[cfg(feature = "std")]
impl Deadline {
    pub fn new(limit: Duration) -> Self {
        Self {
            start: std::time::Instant::now(),
            limit,
        }
    }
}

#[cfg(feature = "std")]
impl Budget for Deadline {
    fn exhausted(&mut self, _: u64) -> bool {
        self.start.elapsed() >= self.limit
    }

    fn elapsed(&self) -> Option<Duration> {
        Some(self.start.elapsed())
    }
}

/// Quantity to maximise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// No two members at product `-2l`.
    G,
    /// No two members at a negative product.
    M,
}

impl Target {
    pub fn spec(self, profile: &Profile) -> ForbiddenSpec {
        match self {
            Target::G => ForbiddenSpec::exact([-2 * profile.l as i32]),
            Target::M => ForbiddenSpec::AllBelow(0),
        }
    }
}

/// Computes `g` or `m` for a profile.
///
/// With `shifted_pruning` the search only visits `≺`-downward-closed
/// families, which is sound for `g` (its optimum is attained on a shifted
/// family) and refused for `m`.
pub fn solve_extremal(
    profile: Profile,
    target: Target,
    budget: &mut dyn Budget,
    shifted_pruning: bool,
) -> Result<SolveResult> {
    if shifted_pruning && target == Target::M {
        return Err(Error::Precondition("shifted pruning is only justified for g".into()));
    }
    let cg = build_conflict_graph(profile, target.spec(&profile))?;
    let r = if shifted_pruning {
        mis_shifted(&cg, budget)
    } else {
        mis_exact(cg.graph(), budget)
    };
    Ok(SolveResult {
        value: r.value,
        witness: cg.family_of(&r.vertices),
        status: r.status,
        nodes_explored: r.nodes_explored,
        elapsed: r.elapsed,
    })
}
