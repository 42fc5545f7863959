//! Exact `f(n, k)`: the least `|<A>|` over families of `n` distinct `k`-sets.
//!
//! Depth-first orderly generation (see [`for_each_class`]) with three
//! independent pruning rules:
//!
//! * bound: a partial family whose closure size plus the number of sets
//!   still to add exceeds the incumbent is dropped (each new `k`-set is a
//!   new member of the closure);
//! * ground size: a ground set of `s·k` elements forces at least `2^s - 1`
//!   unions, so grounds that large are never entered once `2^s - 1`
//!   exceeds the incumbent; for `k = 2` the ground is also held to `2t - 1`;
//! * canonicity: non-canonical partial lists are dropped every
//!   `canonicity_interval` levels and always at the last level.
//!
//! Ties with the incumbent are kept, so a completed run returns every
//! optimal isomorphism class.

mod checkpoint;
mod engine;
mod orderly;

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::setcore::CanonicalForm;

pub use engine::f_min;
pub use orderly::for_each_class;

/// Where the initial incumbent comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperBoundSeed {
    MaxLexSegment,
    ColexSegment,
    Explicit(u64),
    None,
}

impl std::fmt::Display for UpperBoundSeed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UpperBoundSeed::MaxLexSegment => f.write_str("max-lex"),
            UpperBoundSeed::ColexSegment => f.write_str("colex"),
            UpperBoundSeed::Explicit(v) => write!(f, "{v}"),
            UpperBoundSeed::None => f.write_str("none"),
        }
    }
}

impl FromStr for UpperBoundSeed {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-lex" | "maxlex" => Ok(UpperBoundSeed::MaxLexSegment),
            "colex" => Ok(UpperBoundSeed::ColexSegment),
            "none" => Ok(UpperBoundSeed::None),
            other => other
                .parse::<u64>()
                .map(UpperBoundSeed::Explicit)
                .or_else(|_| domain(format!("unknown seed `{other}` (max-lex, colex, none, or a number)"))),
        }
    }
}

/// Which pruning rules are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pruning {
    pub bound: bool,
    pub lemma3: bool,
    /// The `|G| <= 2t - 1` cap for `k = 2`.
    pub pair_ground_cap: bool,
    pub canonicity: bool,
    /// Check canonicity at depths divisible by this (and at the last depth).
    pub canonicity_interval: u32,
}

impl Pruning {
    pub const ALL: Pruning = Pruning {
        bound: true,
        lemma3: true,
        pair_ground_cap: true,
        canonicity: true,
        canonicity_interval: 1,
    };

    pub const NONE: Pruning = Pruning {
        bound: false,
        lemma3: false,
        pair_ground_cap: false,
        canonicity: false,
        canonicity_interval: 1,
    };
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::ALL
    }
}

/// Witnesses beyond this many are counted but not listed.
pub const WITNESS_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub k: u32,
    /// Largest ground set explored; `n·k` (at most 64) when unset.
    pub ground_cap: Option<u32>,
    pub seed: UpperBoundSeed,
    pub pruning: Pruning,
    /// Worker threads; `1` runs on the calling thread.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop after exploring this many nodes; the outcome is then incomplete.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: usize, k: u32) -> Self {
        SearchConfig {
            n,
            k,
            ground_cap: None,
            seed: UpperBoundSeed::MaxLexSegment,
            pruning: Pruning::ALL,
            workers: 1,
            checkpoint: None,
            node_budget: None,
        }
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    pub fn with_checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    pub fn with_ground_cap(mut self, cap: u32) -> Self {
        self.ground_cap = Some(cap);
        self
    }

    pub fn with_seed(mut self, seed: UpperBoundSeed) -> Self {
        self.seed = seed;
        self
    }

    /// The ground cap actually used.
    pub fn effective_ground_cap(&self) -> u32 {
        self.ground_cap
            .unwrap_or_else(|| (self.n as u64 * self.k as u64).min(64) as u32)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return domain("n and k must both be at least 1");
        }
        let cap = self.effective_ground_cap();
        if cap > 64 {
            return domain(format!("ground cap {cap} exceeds 64"));
        }
        if self.pruning.canonicity_interval == 0 {
            return domain("canonicity interval must be at least 1");
        }
        let room = crate::math::binom(cap as u64, self.k as u64);
        if room < self.n as u128 {
            return domain(format!(
                "infeasible: C({cap}, {}) = {room} < n = {}",
                self.k, self.n
            ));
        }
        Ok(())
    }
}

/// Result of [`f_min`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub k: u32,
    /// `f(n, k)` when `complete`; otherwise the best value seen so far.
    /// Absent only if an explicit seed lies below every reachable family.
    pub minimum: Option<u64>,
    /// Optimal isomorphism classes, colex-sorted canonical forms, at most
    /// [`WITNESS_CAP`] of them.
    pub witnesses: Vec<CanonicalForm>,
    pub witness_count: usize,
    pub witnesses_truncated: bool,
    pub nodes_explored: u64,
    pub pruned_by_bound: u64,
    pub pruned_by_canonicity: u64,
    pub pruned_by_lemma3: u64,
    pub complete: bool,
    pub ground_cap: u32,
    pub seed_value: Option<u64>,
    pub elapsed_ms: f64,
}
