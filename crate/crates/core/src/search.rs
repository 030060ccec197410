//! Exhaustive searches over small labelled graphs.
//!
//! Bipartite graphs are enumerated as a side `A` (always containing vertex 0,
//! so each two-colouring is met once) plus a mask over the `|A|·|B|` cross
//! pairs. Each side assignment is one independent work unit. Inside a unit
//! masks are visited by edge count from the top down, so a unit stops at the
//! first level that holds a hit, and skips any level already beaten by the
//! shared best-so-far. Skipped masks are counted so the bookkeeping always
//! adds up to the full labelled total.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{bipartite_from_mask, find_bipartition};
use crate::bounds;
use crate::domination::{self, Solver, UmdStatus};
use crate::exec::{map_ordered, Execution};
use crate::formats::emit_graph6;
use crate::graph::{low_mask, Graph, VertexSet};
use crate::iso::are_isomorphic;

/// Largest order the exhaustive bipartite search accepts.
pub const MAX_SEARCH_ORDER: usize = 10;

const BUDGET_POLL: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {n} outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("gamma must be at least 2, got {0}")]
    GammaTooSmall(usize),
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Wall-clock limit; the run stops early and reports itself incomplete.
    pub budget: Option<Duration>,
    pub execution: Execution,
    /// Keep witnesses of the maximum. Without it, levels tied with the
    /// best-so-far are pruned too.
    pub collect_witnesses: bool,
}

/// Outcome of [`max_umd_bipartite_size`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub gamma: usize,
    /// `None` when no qualifying graph exists (or none was reached).
    pub max_size: Option<u64>,
    /// graph6 strings, one per isomorphism class, sorted.
    pub witnesses: Vec<String>,
    pub graphs_scanned: u64,
    pub graphs_pruned: u64,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
    pub complete: bool,
}

/// Outcome of [`count_extremal_witnesses`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCount {
    pub n: usize,
    pub gamma: usize,
    pub size: u64,
    /// Isomorphism classes found.
    pub count: usize,
    pub witnesses: Vec<String>,
    pub graphs_scanned: u64,
    pub graphs_pruned: u64,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
    pub complete: bool,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Number of labelled `(side, mask)` pairs the bipartite search visits:
/// `Σ_{A ∋ 0} 2^{|A|(n-|A|)}`.
pub fn labelled_pair_count(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    (1..=n)
        .map(|a| binomial(n as u64 - 1, a as u64 - 1) << (a * (n - a)))
        .sum()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Masks over `bits` positions with exactly `ones` set, ascending.
struct FixedWeight {
    next: Option<u64>,
    limit: u64,
}

impl FixedWeight {
    fn new(bits: usize, ones: usize) -> Self {
        let next = (ones <= bits).then(|| low_mask(ones));
        FixedWeight { next, limit: low_mask(bits) }
    }
}

impl Iterator for FixedWeight {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && nxt <= self.limit && nxt > cur).then_some(nxt)
        };
        Some(cur)
    }
}

struct Shared {
    best: AtomicI64,
    scanned: AtomicU64,
    stop: AtomicBool,
    deadline: Option<Instant>,
    started: Instant,
    last_log_ms: AtomicU64,
}

impl Shared {
    fn new(budget: Option<Duration>) -> Self {
        Shared {
            best: AtomicI64::new(-1),
            scanned: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            deadline: budget.map(|b| Instant::now() + b),
            started: Instant::now(),
            last_log_ms: AtomicU64::new(0),
        }
    }

    /// Adds a finished unit's count and logs progress at most once a second.
    fn record(&self, scanned: u64, best: i64) {
        let total = self.scanned.fetch_add(scanned, Ordering::Relaxed) + scanned;
        let now = self.started.elapsed().as_millis() as u64;
        let prev = self.last_log_ms.load(Ordering::Relaxed);
        if now >= prev + 1000
            && self.last_log_ms.compare_exchange(prev, now, Ordering::Relaxed, Ordering::Relaxed).is_ok()
        {
            log::info!("scanned={total} best={}", best.max(0));
        }
    }

    fn finish(&self) {
        let best = self.best.load(Ordering::Relaxed).max(0);
        log::info!("scanned={} best={best}", self.scanned.load(Ordering::Relaxed));
    }

    fn out_of_time(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

#[derive(Default)]
struct UnitOutcome {
    scanned: u64,
    pruned: u64,
    best: Option<u64>,
    hits: Vec<Graph>,
    aborted: bool,
}

/// Every vertex on both sides meets at least one chosen cross pair.
fn covers_all(mask: u64, p: usize, q: usize) -> bool {
    let row = low_mask(q);
    let mut cols = 0;
    for i in 0..p {
        let r = mask >> (i * q) & row;
        if r == 0 {
            return false;
        }
        cols |= r;
    }
    cols == row
}

fn sides(n: usize) -> Vec<VertexSet> {
    (0..1u64 << (n - 1))
        .map(|rest| VertexSet::from_bits(rest << 1 | 1))
        .collect()
}

fn split(n: usize, a: VertexSet) -> (Vec<usize>, Vec<usize>) {
    let b = VertexSet::full(n) - a;
    (a.to_vec(), b.to_vec())
}

/// Scans one level; returns whether it was cut short.
fn scan_level(
    n: usize,
    gamma: usize,
    (a, b): (&[usize], &[usize]),
    level: usize,
    shared: &Shared,
    out: &mut UnitOutcome,
) -> bool {
    let (p, q) = (a.len(), b.len());
    for mask in FixedWeight::new(p * q, level) {
        out.scanned += 1;
        if out.scanned.is_multiple_of(BUDGET_POLL) && shared.out_of_time() {
            return true;
        }
        if !covers_all(mask, p, q) {
            continue;
        }
        let g = bipartite_from_mask(n, a, b, mask);
        if let UmdStatus::Unique(d) = Solver::new(&g).umd_status(gamma) {
            domination::assert_umd_necessary_conditions(&g, d);
            out.hits.push(g);
        }
    }
    false
}

fn max_unit(n: usize, gamma: usize, side: VertexSet, shared: &Shared, collect: bool) -> UnitOutcome {
    let (a, b) = split(n, side);
    let bits = a.len() * b.len();
    let mut out = UnitOutcome::default();
    for level in (0..=bits).rev() {
        let best = shared.best.load(Ordering::Relaxed);
        let beaten = if collect { (level as i64) < best } else { (level as i64) <= best };
        if beaten {
            out.pruned += (0..=level).map(|t| binomial(bits as u64, t as u64)).sum::<u64>();
            break;
        }
        if shared.out_of_time() || scan_level(n, gamma, (&a, &b), level, shared, &mut out) {
            out.aborted = true;
            break;
        }
        if !out.hits.is_empty() {
            shared.best.fetch_max(level as i64, Ordering::Relaxed);
            out.best = Some(level as u64);
            out.pruned += (0..level).map(|t| binomial(bits as u64, t as u64)).sum::<u64>();
            if !collect {
                out.hits.clear();
            }
            break;
        }
    }
    shared.record(out.scanned, shared.best.load(Ordering::Relaxed));
    out.hits = dedup_isomorphic(std::mem::take(&mut out.hits));
    out
}

fn check_params(n: usize, gamma: usize) -> Result<(), SearchError> {
    if gamma < 2 {
        return Err(SearchError::GammaTooSmall(gamma));
    }
    if !(1..=MAX_SEARCH_ORDER).contains(&n) {
        return Err(SearchError::OrderOutOfRange { n, min: 1, max: MAX_SEARCH_ORDER });
    }
    Ok(())
}

/// Maximum size of a bipartite graph on `n` vertices without isolated
/// vertices whose minimum dominating set is unique and has `gamma` vertices.
pub fn max_umd_bipartite_size(
    n: usize,
    gamma: usize,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    check_params(n, gamma)?;
    let start = Instant::now();
    let shared = Shared::new(opts.budget);
    let collect = opts.collect_witnesses;
    let outcomes = map_ordered(sides(n), opts.execution, |side| max_unit(n, gamma, side, &shared, collect));
    shared.finish();

    let complete = outcomes.iter().all(|o| !o.aborted);
    let max_size = outcomes.iter().filter_map(|o| o.best).max();
    let scanned = outcomes.iter().map(|o| o.scanned).sum();
    let pruned = outcomes.iter().map(|o| o.pruned).sum();
    if complete {
        assert_eq!(scanned + pruned, labelled_pair_count(n), "enumeration bookkeeping");
    }
    let witnesses = if collect {
        let hits = outcomes
            .into_iter()
            .filter(|o| o.best == max_size)
            .flat_map(|o| o.hits)
            .collect();
        finish_witnesses(hits, gamma)
    } else {
        Vec::new()
    };
    Ok(SearchResult {
        n,
        gamma,
        max_size,
        witnesses,
        graphs_scanned: scanned,
        graphs_pruned: pruned,
        elapsed: start.elapsed(),
        complete,
    })
}

/// Isomorphism classes of bipartite graphs on `n` vertices without isolated
/// vertices, with exactly `size` edges and a unique minimum dominating set of
/// `gamma` vertices.
pub fn count_extremal_witnesses(
    n: usize,
    gamma: usize,
    size: u64,
    opts: &SearchOptions,
) -> Result<WitnessCount, SearchError> {
    check_params(n, gamma)?;
    let start = Instant::now();
    let shared = Shared::new(opts.budget);
    let outcomes = map_ordered(sides(n), opts.execution, |side| {
        let (a, b) = split(n, side);
        let bits = a.len() * b.len();
        let mut out = UnitOutcome::default();
        if size as usize > bits {
            out.pruned = 1 << bits;
        } else {
            out.pruned = (1u64 << bits) - binomial(bits as u64, size);
            out.aborted = shared.out_of_time()
                || scan_level(n, gamma, (&a, &b), size as usize, &shared, &mut out);
        }
        shared.record(out.scanned, size as i64);
        out.hits = dedup_isomorphic(std::mem::take(&mut out.hits));
        out
    });
    shared.best.store(size as i64, Ordering::Relaxed);
    shared.finish();

    let complete = outcomes.iter().all(|o| !o.aborted);
    let scanned = outcomes.iter().map(|o| o.scanned).sum();
    let pruned = outcomes.iter().map(|o| o.pruned).sum();
    if complete {
        assert_eq!(scanned + pruned, labelled_pair_count(n), "enumeration bookkeeping");
    }
    let witnesses = finish_witnesses(outcomes.into_iter().flat_map(|o| o.hits).collect(), gamma);
    Ok(WitnessCount {
        n,
        gamma,
        size,
        count: witnesses.len(),
        witnesses,
        graphs_scanned: scanned,
        graphs_pruned: pruned,
        elapsed: start.elapsed(),
        complete,
    })
}

/// Keeps the first graph of each isomorphism class, in input order.
pub fn dedup_isomorphic(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut kept: Vec<Graph> = Vec::new();
    for g in graphs {
        let bucket = buckets.entry(g.degree_sequence()).or_default();
        if bucket.iter().any(|&i| are_isomorphic(&kept[i], &g)) {
            continue;
        }
        bucket.push(kept.len());
        kept.push(g);
    }
    kept
}

/// Dedups across units, re-verifies each class through the domination module
/// and returns sorted graph6 strings.
fn finish_witnesses(hits: Vec<Graph>, gamma: usize) -> Vec<String> {
    let reps = dedup_isomorphic(hits);
    let mut out: Vec<String> = reps
        .iter()
        .map(|g| {
            let report = domination::is_umd(g);
            assert!(report.unique && report.gamma == gamma, "witness failed re-verification");
            assert!(find_bipartition(g).is_some() && g.isolated_vertices().is_empty());
            emit_graph6(g)
        })
        .collect();
    out.sort();
    out
}

/// Fewest edges over all labelled graphs on `n` vertices that have no
/// isolated vertex and no two-vertex component, by exhaustive scan.
pub fn forest_lemma_minimum(n: usize) -> Result<u64, SearchError> {
    if !(3..=7).contains(&n) {
        return Err(SearchError::OrderOutOfRange { n, min: 3, max: 7 });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    for level in 0..=pairs.len() {
        let found = FixedWeight::new(pairs.len(), level).any(|mask| {
            let edges: Vec<_> = VertexSet::from_bits(mask).iter().map(|k| pairs[k]).collect();
            let g = Graph::from_edge_list(n, &edges).expect("pairs are in range");
            g.components().iter().all(|c| c.len() >= 3)
        });
        if found {
            return Ok(level as u64);
        }
    }
    unreachable!("the complete graph qualifies for n >= 3")
}

/// Whether the exhaustive minimum equals `⌈2n/3⌉`, for `3 ≤ n ≤ 7`.
pub fn verify_forest_lemma(n: usize) -> Result<bool, SearchError> {
    let brute = forest_lemma_minimum(n)?;
    Ok(brute == bounds::min_forest_edges(n as u64).expect("n >= 3"))
}
