//! Exact domination: domination number, minimum dominating sets, uniqueness,
//! private neighbours and perfect domination.
//!
//! Two independent search routines live here. [`Solver::has_dominating_set_within`]
//! is a branch and bound that picks the undominated vertex with the fewest
//! remaining options and branches over its closed neighbourhood; it decides
//! the domination number by iterative deepening under a greedy upper bound.
//! [`Solver::dominating_sets_within`] enumerates dominating sets in ascending
//! bitmask order by deciding vertices from the highest index down (exclude
//! before include), which is what makes truncated listings deterministic.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{low_mask, Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("vertex {0} is not in the given set")]
    NotInSet(Vertex),
    #[error("the given set does not dominate the graph")]
    NotDominating,
    #[error("the given set has {size} vertices but the domination number is {gamma}")]
    NotMinimum { size: usize, gamma: usize },
}

/// Single-threaded search state for one graph.
pub struct Solver<'g> {
    graph: &'g Graph,
    closed: Vec<u64>,
    /// `prefix_cover[i]`: union of closed neighbourhoods of vertices `< i`.
    prefix_cover: Vec<u64>,
    full: u64,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.order();
        let closed: Vec<u64> = (0..n).map(|v| graph.rows()[v] | 1 << v).collect();
        let mut prefix_cover = vec![0u64; n + 1];
        for v in 0..n {
            prefix_cover[v + 1] = prefix_cover[v] | closed[v];
        }
        Solver { graph, closed, prefix_cover, full: low_mask(n) }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Greedy dominating set: repeatedly take the vertex covering the most
    /// undominated vertices, lowest index on ties.
    pub fn greedy(&self) -> VertexSet {
        let mut und = self.full;
        let mut set = 0u64;
        while und != 0 {
            let v = (0..self.closed.len())
                .max_by_key(|&v| ((self.closed[v] & und).count_ones(), std::cmp::Reverse(v)))
                .expect("undominated vertices imply a non-empty graph");
            set |= 1 << v;
            und &= !self.closed[v];
        }
        VertexSet::from_bits(set)
    }

    pub fn domination_number(&self) -> usize {
        if self.closed.is_empty() {
            return 0;
        }
        let upper = self.greedy().len();
        (1..upper)
            .find(|&k| self.has_dominating_set_within(k))
            .unwrap_or(upper)
    }

    /// Whether some dominating set has at most `k` vertices.
    pub fn has_dominating_set_within(&self, k: usize) -> bool {
        self.branch(self.full, k, 0)
    }

    fn branch(&self, und: u64, k: usize, forbidden: u64) -> bool {
        if und == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let allowed = self.full & !forbidden;

        let mut pivot_options = u64::MAX;
        let mut pivot_count = u32::MAX;
        for u in VertexSet::from_bits(und) {
            let opts = self.closed[u] & allowed;
            let c = opts.count_ones();
            if c == 0 {
                return false;
            }
            if c < pivot_count {
                pivot_count = c;
                pivot_options = opts;
            }
        }

        let mut covers: Vec<(u32, Vertex)> = VertexSet::from_bits(pivot_options)
            .iter()
            .map(|v| ((self.closed[v] & und).count_ones(), v))
            .collect();
        let best_anywhere = VertexSet::from_bits(allowed)
            .iter()
            .map(|v| (self.closed[v] & und).count_ones())
            .max()
            .unwrap_or(0);
        if (best_anywhere as usize) * k < und.count_ones() as usize {
            return false;
        }
        covers.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut forbidden = forbidden;
        for (_, v) in covers {
            if self.branch(und & !self.closed[v], k - 1, forbidden) {
                return true;
            }
            // Every solution through `v` has now been ruled out.
            forbidden |= 1 << v;
        }
        false
    }

    /// All dominating sets with at most `k` vertices in ascending bitmask
    /// order, stopping after `cap`. The flag reports whether the listing was
    /// cut short.
    pub fn dominating_sets_within(&self, k: usize, cap: usize) -> (Vec<VertexSet>, bool) {
        let mut out = Vec::new();
        let mut truncated = false;
        if cap > 0 {
            self.enumerate(self.closed.len(), 0, 0, k, cap, &mut out, &mut truncated);
        }
        (out, truncated)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        undecided: usize,
        chosen: u64,
        dominated: u64,
        budget: usize,
        cap: usize,
        out: &mut Vec<VertexSet>,
        truncated: &mut bool,
    ) {
        if *truncated {
            return;
        }
        let und = self.full & !dominated;
        if undecided == 0 || (und == 0 && budget == 0) {
            if und == 0 {
                if out.len() == cap {
                    *truncated = true;
                    return;
                }
                out.push(VertexSet::from_bits(chosen));
            }
            return;
        }
        if und != 0 {
            if budget == 0 || und & !self.prefix_cover[undecided] != 0 {
                return;
            }
            let best = (0..undecided)
                .map(|v| (self.closed[v] & und).count_ones())
                .max()
                .unwrap_or(0);
            if (best as usize) * budget < und.count_ones() as usize {
                return;
            }
        }
        let v = undecided - 1;
        self.enumerate(v, chosen, dominated, budget, cap, out, truncated);
        self.enumerate(v, chosen | 1 << v, dominated | self.closed[v], budget - 1, cap, out, truncated);
    }

    /// Classifies the graph against a target domination number `k`.
    pub fn umd_status(&self, k: usize) -> UmdStatus {
        if k > 0 && self.has_dominating_set_within(k - 1) {
            return UmdStatus::Smaller;
        }
        let (sets, _) = self.dominating_sets_within(k, 2);
        match sets.as_slice() {
            [] => UmdStatus::Larger,
            [d] => UmdStatus::Unique(*d),
            _ => UmdStatus::Multiple,
        }
    }
}

/// Where a graph's minimum dominating sets stand relative to a target size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UmdStatus {
    /// The domination number is below the target.
    Smaller,
    /// The domination number is above the target.
    Larger,
    /// Exactly one dominating set of the target size, and none smaller.
    Unique(VertexSet),
    /// At least two minimum dominating sets of the target size.
    Multiple,
}

pub fn is_dominating(g: &Graph, s: VertexSet) -> bool {
    g.closed_neighborhood_of(s & g.vertices()) == g.vertices()
}

pub fn domination_number(g: &Graph) -> usize {
    Solver::new(g).domination_number()
}

/// Minimum dominating sets together with the domination number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimumSets {
    pub gamma: usize,
    pub sets: Vec<VertexSet>,
    pub truncated: bool,
}

/// `cap` of `usize::MAX` lists every set.
pub fn minimum_dominating_sets(g: &Graph, cap: usize) -> MinimumSets {
    let solver = Solver::new(g);
    let gamma = solver.domination_number();
    let (sets, truncated) = solver.dominating_sets_within(gamma, cap);
    MinimumSets { gamma, sets, truncated }
}

/// All minimum dominating sets in ascending bitmask order, at most `cap`.
///
/// # Panics
/// If `cap < 2`: a single set cannot tell unique from non-unique.
pub fn enumerate_minimum_dominating_sets(g: &Graph, cap: usize) -> Vec<VertexSet> {
    assert!(cap >= 2, "cap must be at least 2");
    minimum_dominating_sets(g, cap).sets
}

/// `pn(v, S)`: vertices whose closed neighbourhood meets `S` exactly in `{v}`.
pub fn private_neighbors(g: &Graph, v: Vertex, s: VertexSet) -> VertexSet {
    g.vertices()
        .iter()
        .filter(|&u| g.closed_neighborhood(u) & s == VertexSet::singleton(v))
        .collect()
}

/// `epn(v, S) = pn(v, S) - S`.
pub fn exterior_private_neighbors(
    g: &Graph,
    v: Vertex,
    s: VertexSet,
) -> Result<VertexSet, DominationError> {
    if !s.contains(v) {
        return Err(DominationError::NotInSet(v));
    }
    Ok(private_neighbors(g, v, s) - s)
}

/// Whether every `v ∈ d` has at least two exterior private neighbours.
pub fn check_epn_condition(g: &Graph, d: VertexSet) -> Result<bool, DominationError> {
    if !is_dominating(g, d) {
        return Err(DominationError::NotDominating);
    }
    Ok(epn_condition(g, d))
}

fn epn_condition(g: &Graph, d: VertexSet) -> bool {
    d.iter().all(|v| (private_neighbors(g, v, d) - d).len() >= 2)
}

/// Perfect domination of `g` by the minimum dominating set `d`.
pub fn is_perfectly_dominated(g: &Graph, d: VertexSet) -> Result<bool, DominationError> {
    if !is_dominating(g, d) {
        return Err(DominationError::NotDominating);
    }
    let gamma = domination_number(g);
    if d.len() != gamma {
        return Err(DominationError::NotMinimum { size: d.len(), gamma });
    }
    Ok(perfect(g, d))
}

/// Degree-sum form, cross-checked against the structural form.
fn perfect(g: &Graph, d: VertexSet) -> bool {
    let by_degree = perfect_by_degree_sum(g, d);
    assert_eq!(
        by_degree,
        perfect_by_structure(g, d),
        "perfect-domination formulations disagree on a dominating set"
    );
    by_degree
}

/// `Σ_{x ∈ d} deg(x) = n - |d|`.
pub fn perfect_by_degree_sum(g: &Graph, d: VertexSet) -> bool {
    let sum: usize = d.iter().map(|v| g.degree(v)).sum();
    sum + d.len() == g.order()
}

/// `d` is independent and every vertex outside it has exactly one neighbour in it.
pub fn perfect_by_structure(g: &Graph, d: VertexSet) -> bool {
    g.is_independent(d)
        && (g.vertices() - d)
            .iter()
            .all(|u| (g.neighbors(u) & d).len() == 1)
}

/// Whether the closed neighbourhoods of the members of `d` are pairwise disjoint.
pub fn closed_neighborhoods_disjoint(g: &Graph, d: VertexSet) -> bool {
    let mut seen = VertexSet::EMPTY;
    for v in d {
        let nb = g.closed_neighborhood(v);
        if !nb.is_disjoint(seen) {
            return false;
        }
        seen |= nb;
    }
    true
}

static UMD_CONDITION_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of uniquely dominated, isolate-free graphs checked so far by
/// [`assert_umd_necessary_conditions`] in this process.
pub fn umd_condition_checks() -> u64 {
    UMD_CONDITION_CHECKS.load(Ordering::Relaxed)
}

/// A graph without isolated vertices whose minimum dominating set `d` is
/// unique must give every dominator two exterior private neighbours, hence
/// `n ≥ 3|d|`. Panics if either fails.
pub fn assert_umd_necessary_conditions(g: &Graph, d: VertexSet) {
    debug_assert!(g.isolated_vertices().is_empty());
    UMD_CONDITION_CHECKS.fetch_add(1, Ordering::Relaxed);
    assert!(
        epn_condition(g, d),
        "unique minimum dominating set {d:?} has a dominator with fewer than two exterior private neighbours in {g:?}"
    );
    assert!(
        g.order() >= 3 * d.len(),
        "unique minimum dominating set of size {} on only {} vertices",
        d.len(),
        g.order()
    );
}

/// Everything known about a graph's minimum dominating sets.
///
/// `perfectly_dominated` and `epn_condition_met` describe the first listed
/// minimum set; `epn_by_dominator` is filled only when that set is unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    pub gamma: usize,
    pub min_sets: Vec<VertexSet>,
    pub truncated: bool,
    pub unique: bool,
    pub epn_by_dominator: BTreeMap<Vertex, VertexSet>,
    pub perfectly_dominated: bool,
    pub epn_condition_met: bool,
    pub isolated: VertexSet,
}

impl DominationReport {
    pub fn dominating_set(&self) -> Option<VertexSet> {
        self.unique.then(|| self.min_sets[0])
    }
}

/// Uniqueness report; listing stops at two sets.
pub fn is_umd(g: &Graph) -> DominationReport {
    domination_report(g, 2)
}

/// Report listing up to `cap` minimum sets (`usize::MAX` for all).
pub fn domination_report(g: &Graph, cap: usize) -> DominationReport {
    let MinimumSets { gamma, sets, truncated } = minimum_dominating_sets(g, cap.max(2));
    let unique = sets.len() == 1;
    let isolated = g.isolated_vertices();
    let first = sets.first().copied().unwrap_or_default();
    let mut epn_by_dominator = BTreeMap::new();
    if unique {
        for v in first {
            epn_by_dominator.insert(v, private_neighbors(g, v, first) - first);
        }
        if isolated.is_empty() && g.order() > 0 {
            assert_umd_necessary_conditions(g, first);
        }
    }
    DominationReport {
        gamma,
        perfectly_dominated: perfect(g, first),
        epn_condition_met: epn_condition(g, first),
        min_sets: sets,
        truncated,
        unique,
        epn_by_dominator,
        isolated,
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

struct EpnMap<'a>(&'a BTreeMap<Vertex, VertexSet>);

impl Serialize for EpnMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (v, set) in self.0 {
            m.serialize_entry(&v.to_string(), set)?;
        }
        m.end()
    }
}

/// `{"gamma", "unique", "min_sets", "epn", "perfect", "epn_condition"}`.
impl Serialize for DominationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DominationReport", 6)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.serialize_field("unique", &self.unique)?;
        st.serialize_field("min_sets", &self.min_sets)?;
        st.serialize_field("epn", &EpnMap(&self.epn_by_dominator))?;
        st.serialize_field("perfect", &self.perfectly_dominated)?;
        st.serialize_field("epn_condition", &self.epn_condition_met)?;
        st.end()
    }
}
