use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::checkpoint::{config_fields, Checkpoint, Code, Stats};
use super::orderly::candidates;
use super::{Pruning, SearchConfig, SearchOutcome, UpperBoundSeed, WITNESS_CAP};
use crate::closure::closure_sets;
use crate::constructions::{colex_segment, maxlex_segment, pair_level};
use crate::error::Result;
use crate::setcore::{canonical_code, is_canonical, CanonicalForm, ElementSet};

/// Aim for at least this many top-level prefixes before going depth-first.
const SPLIT_TARGET: usize = 256;
const FLUSH_EVERY: u64 = 64;
const SAVE_EVERY: Duration = Duration::from_secs(2);

#[derive(Clone, Debug)]
struct Node {
    sets: Vec<u64>,
    /// Sorted closure of `sets`.
    closure: Vec<u64>,
    m: u32,
}

#[derive(Default)]
struct Worker {
    stats: Stats,
    unflushed: u64,
    best: Option<u64>,
    codes: BTreeSet<Code>,
}

struct Ctx {
    n: usize,
    k: u32,
    cap: u32,
    pruning: Pruning,
    incumbent: AtomicU64,
    nodes: AtomicU64,
    abort: AtomicBool,
    /// Node budget for the depth-first phase; `u64::MAX` while splitting.
    budget: AtomicU64,
    pair_t: u32,
}

fn to_sets(bits: &[u64]) -> Vec<ElementSet> {
    bits.iter().map(|&b| ElementSet::from_bits(b)).collect()
}

/// Closure of `closure ∪ {b}` given the closure of the old generators.
fn extend_closure(closure: &[u64], b: u64) -> Vec<u64> {
    let mut fresh: Vec<u64> = std::iter::once(b)
        .chain(closure.iter().map(|&c| c | b))
        .filter(|u| closure.binary_search(u).is_err())
        .collect();
    fresh.sort_unstable();
    fresh.dedup();
    let mut out = Vec::with_capacity(closure.len() + fresh.len());
    let (mut i, mut j) = (0, 0);
    while i < closure.len() && j < fresh.len() {
        if closure[i] < fresh[j] {
            out.push(closure[i]);
            i += 1;
        } else {
            out.push(fresh[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&closure[i..]);
    out.extend_from_slice(&fresh[j..]);
    out
}

fn merge(best: &mut Option<u64>, codes: &mut BTreeSet<Code>, value: Option<u64>, new: BTreeSet<Code>) {
    let Some(v) = value else { return };
    match *best {
        Some(b) if b < v => {}
        Some(b) if b == v => codes.extend(new),
        _ => {
            *best = Some(v);
            *codes = new;
        }
    }
}

impl Ctx {
    fn incumbent(&self) -> u64 {
        self.incumbent.load(Ordering::Relaxed)
    }

    /// Largest ground size still worth entering.
    fn dynamic_cap(&self) -> u32 {
        let inc = self.incumbent();
        let mut cap = self.cap;
        if inc == u64::MAX {
            return cap;
        }
        if self.pruning.lemma3 {
            // least s with 2^s - 1 > inc; grounds of s·k elements are too big
            let s = 64 - (inc + 1).leading_zeros();
            cap = cap.min((s * self.k).saturating_sub(1));
        }
        if self.pruning.pair_ground_cap && self.k == 2 && self.pair_t < 64 && inc < (1u64 << self.pair_t) - 1 {
            cap = cap.min(2 * self.pair_t - 1);
        }
        cap
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self, w: &mut Worker) -> bool {
        w.stats.nodes += 1;
        w.unflushed += 1;
        if w.unflushed >= FLUSH_EVERY {
            let total = self.nodes.fetch_add(w.unflushed, Ordering::Relaxed) + w.unflushed;
            w.unflushed = 0;
            if total >= self.budget.load(Ordering::Relaxed) {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
        !self.abort.load(Ordering::Relaxed)
    }

    /// Visits the surviving children of `node`; false if aborted.
    fn for_children(&self, node: &Node, w: &mut Worker, mut visit: impl FnMut(Node, &mut Worker) -> bool) -> bool {
        let last = node.sets.last().copied().unwrap_or(0);
        let depth = node.sets.len() + 1;
        let cap = self.dynamic_cap();
        let interval = self.pruning.canonicity_interval as usize;
        for (b, m) in candidates(last, node.m, self.k, self.cap) {
            if m > cap {
                w.stats.lemma3 += 1;
                continue;
            }
            if !self.tick(w) {
                return false;
            }
            let closure = extend_closure(&node.closure, b);
            if self.pruning.bound {
                let lb = closure.len() as u64 + (self.n - depth) as u64;
                if lb > self.incumbent() {
                    w.stats.bound += 1;
                    continue;
                }
            }
            let mut sets = Vec::with_capacity(self.n);
            sets.extend_from_slice(&node.sets);
            sets.push(b);
            if self.pruning.canonicity
                && (depth.is_multiple_of(interval) || depth == self.n)
                && !is_canonical(&to_sets(&sets))
            {
                w.stats.canonicity += 1;
                continue;
            }
            if !visit(Node { sets, closure, m }, w) {
                return false;
            }
        }
        true
    }

    fn dfs(&self, node: Node, w: &mut Worker) -> bool {
        if node.sets.len() == self.n {
            self.record(&node, w);
            return true;
        }
        self.for_children(&node, w, |child, w| self.dfs(child, w))
    }

    fn record(&self, node: &Node, w: &mut Worker) {
        let value = node.closure.len() as u64;
        if value > self.incumbent() || w.best.is_some_and(|b| value > b) {
            return;
        }
        self.incumbent.fetch_min(value, Ordering::Relaxed);
        let code = if self.pruning.canonicity {
            node.sets.clone()
        } else {
            canonical_code(&to_sets(&node.sets)).iter().map(|s| s.bits()).collect()
        };
        if w.best != Some(value) {
            w.best = Some(value);
            w.codes.clear();
        }
        w.codes.insert(code);
    }
}

fn seed_value(config: &SearchConfig) -> Result<Option<u64>> {
    let construction = match config.seed {
        UpperBoundSeed::Explicit(v) => return Ok(Some(v)),
        UpperBoundSeed::None => return Ok(None),
        UpperBoundSeed::MaxLexSegment => maxlex_segment(config.k, config.n)?,
        UpperBoundSeed::ColexSegment => colex_segment(config.k, config.n)?,
    };
    let family = construction.family;
    // a seed outside the explored grounds may be unattainable there
    if family.ground().len() > config.effective_ground_cap() {
        return Ok(None);
    }
    Ok(Some(closure_sets(family.sets()).len() as u64))
}

struct Aggregate {
    best: Option<u64>,
    codes: BTreeSet<Code>,
    done: BTreeSet<Code>,
    stats: Stats,
    last_save: Instant,
}

/// Computes `f(n, k)` for the configured parameters.
pub fn f_min(config: &SearchConfig) -> Result<SearchOutcome> {
    let started = Instant::now();
    config.validate()?;
    let fields = config_fields(config);
    let previous = match &config.checkpoint {
        Some(path) => Checkpoint::load(path)?,
        None => None,
    };
    if let Some(cp) = &previous {
        cp.check_matches(&fields)?;
    }

    let seed = seed_value(config)?;
    let prunes = config.pruning.bound || config.pruning.lemma3 || config.pruning.pair_ground_cap;
    let mut start = if prunes { seed.unwrap_or(u64::MAX) } else { u64::MAX };
    if let Some(inc) = previous.as_ref().and_then(|cp| cp.incumbent) {
        start = start.min(inc);
    }
    let ctx = Ctx {
        n: config.n,
        k: config.k,
        cap: config.effective_ground_cap(),
        pruning: config.pruning,
        incumbent: AtomicU64::new(start),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        budget: AtomicU64::new(u64::MAX),
        pair_t: pair_level(config.n as u64),
    };

    // breadth-first down to the split depth
    let mut split_worker = Worker::default();
    let fixed_depth = previous.as_ref().map(|cp| cp.split_depth);
    let mut level = vec![Node { sets: Vec::new(), closure: Vec::new(), m: 0 }];
    let mut depth = 0;
    loop {
        let stop = match fixed_depth {
            Some(d) => depth >= d,
            None => level.len() >= SPLIT_TARGET,
        };
        if stop || depth >= config.n || level.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for node in &level {
            // no budget applies yet, so this never stops early
            ctx.for_children(node, &mut split_worker, |child, _| {
                next.push(child);
                true
            });
        }
        level = next;
        depth += 1;
    }
    let split_depth = depth;
    // the split is replayed on every resume, so only later work is budgeted
    ctx.nodes.store(0, Ordering::Relaxed);
    ctx.budget.store(config.node_budget.unwrap_or(u64::MAX), Ordering::Relaxed);

    let mut agg = Aggregate {
        best: None,
        codes: BTreeSet::new(),
        done: BTreeSet::new(),
        stats: split_worker.stats.clone(),
        last_save: Instant::now(),
    };
    if let Some(cp) = previous {
        agg.best = cp.best;
        agg.codes = cp.witnesses;
        agg.done = cp.done;
        // the earlier run already counted the split
        agg.stats = cp.stats;
    }
    let snapshot = |agg: &Aggregate, inc: u64| Checkpoint {
        config: fields.clone(),
        split_depth,
        incumbent: (inc != u64::MAX).then_some(inc),
        stats: agg.stats.clone(),
        best: agg.best,
        witnesses: agg.codes.clone(),
        done: agg.done.clone(),
    };

    let pending: Vec<Node> = level
        .into_iter()
        .filter(|node| !agg.done.contains(&node.sets))
        .collect();
    let agg = Mutex::new(agg);
    let run_item = |node: Node| -> Result<()> {
        let mut w = Worker::default();
        let prefix = node.sets.clone();
        let finished = ctx.dfs(node, &mut w);
        ctx.nodes.fetch_add(w.unflushed, Ordering::Relaxed);
        let mut a = agg.lock().expect("aggregate lock");
        let Aggregate { best, codes, .. } = &mut *a;
        merge(best, codes, w.best, std::mem::take(&mut w.codes));
        a.stats.add(&w.stats);
        if finished {
            a.done.insert(prefix);
        }
        if let Some(path) = &config.checkpoint {
            if a.last_save.elapsed() >= SAVE_EVERY {
                snapshot(&a, ctx.incumbent()).save(path)?;
                a.last_save = Instant::now();
            }
        }
        Ok(())
    };
    if config.workers <= 1 {
        for node in pending {
            run_item(node)?;
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| crate::Error::Io(e.to_string()))?;
        pool.install(|| pending.into_par_iter().try_for_each(run_item))?;
    }

    let agg = agg.into_inner().expect("aggregate lock");
    let complete = !ctx.abort.load(Ordering::Relaxed);
    if let Some(path) = &config.checkpoint {
        snapshot(&agg, ctx.incumbent()).save(path)?;
    }
    let witnesses = agg
        .codes
        .iter()
        .take(WITNESS_CAP)
        .map(|code| CanonicalForm::from_code(config.k, to_sets(code)))
        .collect();
    Ok(SearchOutcome {
        n: config.n,
        k: config.k,
        minimum: agg.best,
        witnesses,
        witness_count: agg.codes.len(),
        witnesses_truncated: agg.codes.len() > WITNESS_CAP,
        nodes_explored: agg.stats.nodes,
        pruned_by_bound: agg.stats.bound,
        pruned_by_canonicity: agg.stats.canonicity,
        pruned_by_lemma3: agg.stats.lemma3,
        complete,
        ground_cap: config.effective_ground_cap(),
        seed_value: seed,
        elapsed_ms: started.elapsed().as_secs_f64() * 1000.0,
    })
}
