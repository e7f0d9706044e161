//! Exhaustive search for the largest dual-graph diameter among (S2)
//! complexes with facet size `d` using all of `n` vertices, plus the upper
//! bounds it is checked against.
//!
//! Candidate facets are the `d`-subsets of `0..n` in numeric order, indexed
//! `0..m`. A node of the search tree is a set of facet indices; it is kept
//! only if its sorted index list is the smallest in its orbit under vertex
//! permutations (orderly generation). That property survives deleting the
//! largest index, so a depth-first walk that appends larger indices meets
//! each isomorphism class exactly once.

pub mod bounds;
pub mod canonical;
pub mod checkpoint;
mod eval;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::dual_graph::{complex_diameter, Distance};
use crate::error::{Error, Result};
use crate::serre::is_s2;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

pub use bounds::{bounds, within_bounds, UpperBounds};
pub use canonical::{canonical_form, isomorphism, CanonicalForm, EXACT_LIMIT};
pub use checkpoint::Checkpoint;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Canonical-node budget for this call; a resumed run gets a fresh one.
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Stop exploring subtrees once the incumbent meets `bounds(d, n).best`.
    /// The answer is unchanged, but it then relies on the bounds.
    pub prune_with_bounds: bool,
    /// Tree depth at which subtrees become parallel tasks.
    pub split_depth: usize,
    /// Resume from and periodically save to this file.
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: None,
            max_nodes: None,
            max_time: None,
            prune_with_bounds: false,
            split_depth: 4,
            checkpoint: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Completed,
    NodeBudget,
    TimeBudget,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub d: usize,
    pub n: usize,
    /// Largest diameter found (0 if nothing was found).
    pub mu: usize,
    /// The maximizer with the smallest facet-index key.
    pub witness: Option<SimplicialComplex>,
    pub witness_key: Vec<usize>,
    /// Every canonical node was visited.
    pub exhaustive: bool,
    /// `mu` is the true maximum: exhaustive, or completed with subtrees
    /// discharged by meeting the upper bound.
    pub optimal: bool,
    pub stop: StopReason,
    pub bound_pruned: bool,
    pub bound: u64,
    /// Canonical nodes visited.
    pub nodes_explored: u64,
    /// Nodes covering all `n` vertices, checked for (S2).
    pub evaluated: u64,
    /// Isomorphism classes found to be (S2).
    pub s2_found: u64,
    /// Number of (S2) classes per diameter.
    pub histogram: BTreeMap<usize, u64>,
    pub tasks: usize,
    pub tasks_resumed: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
struct Stats {
    nodes: u64,
    evaluated: u64,
    s2_found: u64,
    histogram: BTreeMap<usize, u64>,
    bound_pruned: bool,
}

impl Stats {
    fn absorb(&mut self, other: &Stats) {
        self.nodes += other.nodes;
        self.evaluated += other.evaluated;
        self.s2_found += other.s2_found;
        for (k, v) in &other.histogram {
            *self.histogram.entry(*k).or_default() += v;
        }
        self.bound_pruned |= other.bound_pruned;
    }
}

/// Incumbent: larger diameter wins, ties go to the smaller key.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Best {
    diameter: usize,
    key: Vec<usize>,
}

impl Best {
    fn beats(&self, other: &Option<Best>) -> bool {
        match other {
            None => true,
            Some(o) => {
                self.diameter > o.diameter || (self.diameter == o.diameter && self.key < o.key)
            }
        }
    }
}

struct Space {
    n: usize,
    d: usize,
    facets: Vec<VertexSet>,
    /// `suffix[j]` = union of candidate facets `j..m`.
    suffix: Vec<VertexSet>,
    full: VertexSet,
}

impl Space {
    fn new(d: usize, n: usize) -> Result<Space> {
        if d < 2 || n <= d {
            return Err(Error::BadParams(format!(
                "search needs 2 <= d < n, got d={d}, n={n}"
            )));
        }
        let m = binomial(n, d);
        if m > MAX_VERTICES as u128 {
            return Err(Error::BadParams(format!(
                "C({n},{d}) = {m} candidate facets; at most {MAX_VERTICES} supported"
            )));
        }
        let mut facets = Vec::with_capacity(m as usize);
        subsets(n, d, 0, VertexSet::EMPTY, &mut facets);
        facets.sort_unstable();
        let mut suffix = vec![VertexSet::EMPTY; facets.len() + 1];
        for j in (0..facets.len()).rev() {
            suffix[j] = suffix[j + 1].union(facets[j]);
        }
        Ok(Space {
            n,
            d,
            facets,
            suffix,
            full: VertexSet::full(n),
        })
    }

    fn complex(&self, key: &[usize]) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(key.iter().map(|&i| self.facets[i]), Some(self.n))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn subsets(n: usize, k: usize, from: usize, acc: VertexSet, out: &mut Vec<VertexSet>) {
    if acc.len() == k {
        out.push(acc);
        return;
    }
    for v in from..n {
        subsets(n, k, v + 1, acc.with(v), out);
    }
}

struct Shared<'a> {
    space: &'a Space,
    bound: usize,
    prune: bool,
    /// Budget for this run, on top of `initial_nodes` carried over.
    max_nodes: Option<u64>,
    initial_nodes: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    stop: AtomicBool,
    stop_reason: Mutex<Option<StopReason>>,
    best: Mutex<Option<Best>>,
    best_diameter: AtomicUsize,
    bound_reached: AtomicBool,
    error: Mutex<Option<Error>>,
}

impl Shared<'_> {
    fn halt(&self, reason: StopReason) {
        let mut r = self.stop_reason.lock().expect("lock");
        r.get_or_insert(reason);
        self.stop.store(true, Ordering::SeqCst);
    }

    fn fail(&self, e: Error) {
        self.error.lock().expect("lock").get_or_insert(e);
        self.stop.store(true, Ordering::SeqCst);
    }

    fn offer(&self, candidate: Best) {
        if candidate.diameter < self.best_diameter.load(Ordering::Relaxed) {
            return;
        }
        let mut best = self.best.lock().expect("lock");
        if candidate.beats(&best) {
            self.best_diameter
                .store(candidate.diameter, Ordering::Relaxed);
            if candidate.diameter >= self.bound {
                self.bound_reached.store(true, Ordering::SeqCst);
            }
            *best = Some(candidate);
        }
    }

    fn best_key(&self) -> Option<Vec<usize>> {
        self.best
            .lock()
            .expect("lock")
            .as_ref()
            .map(|b| b.key.clone())
    }
}

struct Worker<'s, 'a> {
    shared: &'s Shared<'a>,
    stats: Stats,
    key: Vec<usize>,
    sets: Vec<VertexSet>,
    cached_key: Option<Vec<usize>>,
    since_refresh: u32,
}

impl<'s, 'a> Worker<'s, 'a> {
    fn new(shared: &'s Shared<'a>) -> Self {
        Worker {
            shared,
            stats: Stats::default(),
            key: Vec::new(),
            sets: Vec::new(),
            cached_key: None,
            since_refresh: 0,
        }
    }

    fn load(&mut self, key: &[usize]) {
        self.key = key.to_vec();
        self.sets = key.iter().map(|&i| self.shared.space.facets[i]).collect();
    }

    /// Visits the current node, then (if `limit` allows) its children.
    /// Children at depth `limit` are collected into `tasks` unvisited.
    fn explore(&mut self, limit: Option<usize>, tasks: &mut Vec<Vec<usize>>) {
        if !self.visit() {
            return;
        }
        let space = self.shared.space;
        let union = self.sets.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
        let start = self.key.last().map_or(0, |&l| l + 1);
        for j in start..space.facets.len() {
            if self.shared.stop.load(Ordering::Relaxed) {
                return;
            }
            if union.union(space.suffix[j]) != space.full {
                break;
            }
            self.key.push(j);
            self.sets.push(space.facets[j]);
            if canonical::is_canonical(space.n, &self.sets) {
                if Some(self.key.len()) == limit {
                    tasks.push(self.key.clone());
                } else {
                    self.explore(limit, tasks);
                }
            }
            self.key.pop();
            self.sets.pop();
        }
    }

    /// Counts and evaluates the current node; false means skip its subtree.
    fn visit(&mut self) -> bool {
        let shared = self.shared;
        let count = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        self.stats.nodes += 1;
        if shared
            .max_nodes
            .is_some_and(|max| count - shared.initial_nodes > max)
        {
            shared.halt(StopReason::NodeBudget);
            return false;
        }
        if count.is_multiple_of(64) && shared.deadline.is_some_and(|t| Instant::now() >= t) {
            shared.halt(StopReason::TimeBudget);
            return false;
        }
        if shared.prune && shared.bound_reached.load(Ordering::Relaxed) {
            self.since_refresh += 1;
            if self.cached_key.is_none() || self.since_refresh >= 256 {
                self.cached_key = shared.best_key();
                self.since_refresh = 0;
            }
            if self.cached_key.as_ref().is_some_and(|k| self.key > *k) {
                self.stats.bound_pruned = true;
                return false;
            }
        }
        let space = shared.space;
        if self.key.is_empty() {
            return true;
        }
        let union = self.sets.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
        if union == space.full {
            self.stats.evaluated += 1;
            if let Some(diameter) = eval::s2_diameter(&self.sets, space.d) {
                self.stats.s2_found += 1;
                *self.stats.histogram.entry(diameter).or_default() += 1;
                if diameter > shared.bound {
                    shared.fail(self.violation(diameter));
                    return false;
                }
                shared.offer(Best {
                    diameter,
                    key: self.key.clone(),
                });
            }
        }
        true
    }

    fn violation(&self, diameter: usize) -> Error {
        let space = self.shared.space;
        let dump = space
            .complex(&self.key)
            .map(|cx| cx.to_string())
            .unwrap_or_else(|e| e.to_string());
        Error::BoundViolation {
            d: space.d,
            n: space.n,
            diameter,
            bound: self.shared.bound as u64,
            dump: format!("{dump} key={:?}", self.key),
        }
    }
}

/// Computes the largest dual-graph diameter over (S2) complexes with facet
/// size `d` using all `n` vertices.
pub fn enumerate_mu(d: usize, n: usize, config: &SearchConfig) -> Result<SearchResult> {
    let started = Instant::now();
    let space = Space::new(d, n)?;
    let bound = usize::try_from(bounds(d, n)?.best).unwrap_or(usize::MAX);
    let split = config.split_depth.max(1);

    let resumed = match &config.checkpoint {
        Some(path) => Checkpoint::load(path)?,
        None => None,
    };
    if let Some(cp) = &resumed {
        if (cp.d, cp.n, cp.split, cp.prune_with_bounds) != (d, n, split, config.prune_with_bounds) {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for d={}, n={}, split={}, prune_with_bounds={}",
                cp.d, cp.n, cp.split, cp.prune_with_bounds
            )));
        }
    }

    let shared = Shared {
        space: &space,
        bound,
        prune: config.prune_with_bounds,
        max_nodes: config.max_nodes,
        initial_nodes: resumed.as_ref().map_or(0, |c| c.nodes),
        deadline: config.max_time.map(|t| started + t),
        nodes: AtomicU64::new(resumed.as_ref().map_or(0, |c| c.nodes)),
        stop: AtomicBool::new(false),
        stop_reason: Mutex::new(None),
        best: Mutex::new(None),
        best_diameter: AtomicUsize::new(0),
        bound_reached: AtomicBool::new(false),
        error: Mutex::new(None),
    };
    if let Some((diameter, key)) = resumed.as_ref().and_then(|c| c.best.clone()) {
        shared.offer(Best { diameter, key });
    }

    let mut tasks = Vec::new();
    let mut prelude = Worker::new(&shared);
    prelude.explore(Some(split), &mut tasks);
    let prelude_stats = prelude.stats;

    let mut done_state = resumed.clone().unwrap_or_else(|| Checkpoint {
        d,
        n,
        split,
        prune_with_bounds: config.prune_with_bounds,
        ..Default::default()
    });
    if done_state.tasks != 0 && done_state.tasks != tasks.len() {
        return Err(Error::Checkpoint("task count differs from this run".into()));
    }
    done_state.tasks = tasks.len();
    let tasks_resumed = done_state.done.len();
    let done_state = Mutex::new((done_state, Instant::now()));

    let run_tasks = || {
        tasks
            .par_iter()
            .enumerate()
            .map(|(index, key)| {
                let mut worker = Worker::new(&shared);
                if done_state.lock().expect("lock").0.done.contains(&index)
                    || shared.stop.load(Ordering::Relaxed)
                {
                    return worker.stats;
                }
                worker.load(key);
                worker.explore(None, &mut Vec::new());
                if !shared.stop.load(Ordering::Relaxed) {
                    let mut guard = done_state.lock().expect("lock");
                    let (cp, last_write) = &mut *guard;
                    cp.done.insert(index);
                    cp.nodes += worker.stats.nodes;
                    cp.evaluated += worker.stats.evaluated;
                    cp.s2_found += worker.stats.s2_found;
                    for (k, v) in &worker.stats.histogram {
                        *cp.histogram.entry(*k).or_default() += v;
                    }
                    if let Some(path) = &config.checkpoint {
                        if last_write.elapsed() >= Duration::from_secs(2) {
                            cp.best = shared
                                .best
                                .lock()
                                .expect("lock")
                                .as_ref()
                                .map(|b| (b.diameter, b.key.clone()));
                            if let Err(e) = cp.store(path) {
                                shared.fail(e);
                            }
                            *last_write = Instant::now();
                        }
                    }
                }
                worker.stats
            })
            .collect::<Vec<Stats>>()
    };
    let task_stats = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::BadParams(e.to_string()))?
            .install(run_tasks),
        None => run_tasks(),
    };

    if let Some(e) = shared.error.lock().expect("lock").take() {
        return Err(e);
    }
    let (mut cp, _) = done_state.into_inner().expect("lock");
    let best = shared.best.into_inner().expect("lock");
    cp.best = best.as_ref().map(|b| (b.diameter, b.key.clone()));
    if let Some(path) = &config.checkpoint {
        cp.store(path)?;
    }

    // totals: prelude, tasks finished in earlier runs, and this run's tasks
    let mut stats = prelude_stats;
    if let Some(old) = &resumed {
        stats.absorb(&Stats {
            nodes: 0,
            evaluated: old.evaluated,
            s2_found: old.s2_found,
            histogram: old.histogram.clone(),
            bound_pruned: false,
        });
    }
    for s in &task_stats {
        stats.absorb(s);
    }
    let stop = shared
        .stop_reason
        .into_inner()
        .expect("lock")
        .unwrap_or(StopReason::Completed);

    let (mu, witness, witness_key) = match best {
        Some(b) => {
            let cx = space.complex(&b.key)?;
            verify_witness(&cx, d, n, b.diameter)?;
            (b.diameter, Some(cx), b.key)
        }
        None => (0, None, Vec::new()),
    };
    Ok(SearchResult {
        d,
        n,
        mu,
        witness,
        witness_key,
        exhaustive: stop == StopReason::Completed && !stats.bound_pruned,
        optimal: stop == StopReason::Completed,
        stop,
        bound_pruned: stats.bound_pruned,
        bound: bound as u64,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        evaluated: stats.evaluated,
        s2_found: stats.s2_found,
        histogram: stats.histogram,
        tasks: tasks.len(),
        tasks_resumed,
        elapsed: started.elapsed(),
    })
}

/// Re-checks a witness through the public checkers.
fn verify_witness(cx: &SimplicialComplex, d: usize, n: usize, diameter: usize) -> Result<()> {
    let ok = cx.d() == Some(d)
        && cx.n() == n
        && is_s2(cx)?.holds
        && complex_diameter(cx)? == Distance::Finite(diameter);
    if ok {
        Ok(())
    } else {
        Err(Error::SelfCheckFailed {
            family: format!("search({d},{n})"),
            detail: format!("witness {cx} does not re-verify"),
        })
    }
}

/// Diameter against `bounds(d, n).best`. The bounds only constrain (S2)
/// complexes, so anything else passes vacuously.
pub fn verify_bounds(cx: &SimplicialComplex) -> Result<bool> {
    let d = cx.d().ok_or(Error::NotPure)?;
    // a single simplex (codimension 0) has diameter 0 and no bound
    if d < 2 || cx.n() == d || !is_s2(cx)?.holds {
        return Ok(true);
    }
    match complex_diameter(cx)? {
        Distance::Finite(x) => within_bounds(d, cx.n(), x),
        Distance::Unbounded => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_space() {
        let s = Space::new(2, 4).unwrap();
        assert_eq!(s.facets.len(), 6);
        assert!(s.facets.windows(2).all(|w| w[0] < w[1]));
        assert!(Space::new(4, 12).is_err());
        assert!(Space::new(1, 4).is_err());
    }

    #[test]
    fn small_graphs() {
        for n in 3..=6 {
            let r = enumerate_mu(2, n, &SearchConfig::default()).unwrap();
            assert_eq!(r.mu, n - 2, "n={n}");
            assert!(r.exhaustive && r.optimal);
        }
    }

    #[test]
    fn node_budget_stops_early() {
        let cfg = SearchConfig {
            max_nodes: Some(10),
            ..Default::default()
        };
        let r = enumerate_mu(2, 6, &cfg).unwrap();
        assert_eq!(r.stop, StopReason::NodeBudget);
        assert!(!r.exhaustive);
    }
}
