use proptest::prelude::*;

use unidom::bipartite::{bipartite_complement, find_bipartition};
use unidom::bounds;
use unidom::constructions::{construct_bipartite, verify_construction};
use unidom::domination::{
    closed_neighborhoods_disjoint, exterior_private_neighbors, minimum_dominating_sets, Solver,
};
use unidom::iso::{are_isomorphic, find_isomorphism};
use unidom::search::{self, SearchOptions};
use unidom::{domination_number, is_umd, Graph, VertexSet};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    let edges: Vec<_> = pairs.zip(bits).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn dominates(g: &Graph, mask: u64) -> bool {
    (0..g.order()).all(|v| mask >> v & 1 == 1 || (0..g.order()).any(|u| mask >> u & 1 == 1 && g.has_edge(u, v)))
}

/// Every minimum dominating set, by trying all subsets.
fn brute_minimum_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    for k in 0..=n {
        let sets: Vec<_> = (0..1u64 << n)
            .filter(|m| m.count_ones() as usize == k && dominates(g, *m))
            .map(VertexSet::from_bits)
            .collect();
        if !sets.is_empty() {
            return sets;
        }
    }
    unreachable!()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && permutations(g.order()).iter().any(|p| g.edges().all(|(u, v)| h.has_edge(p[u], p[v])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_subsets(g in arb_graph(0, 10)) {
        let sets = brute_minimum_sets(&g);
        prop_assert_eq!(domination_number(&g), sets[0].len());
        let s = Solver::new(&g);
        let gamma = sets[0].len();
        prop_assert!(s.has_dominating_set_within(gamma));
        prop_assert!(gamma == 0 || !s.has_dominating_set_within(gamma - 1));
    }

    #[test]
    fn enumerator_lists_all_minimum_sets(g in arb_graph(0, 8)) {
        let all = minimum_dominating_sets(&g, usize::MAX);
        prop_assert!(!all.truncated);
        prop_assert_eq!(all.sets, brute_minimum_sets(&g));
    }

    #[test]
    fn report_uniqueness(g in arb_graph(1, 9)) {
        let r = is_umd(&g);
        prop_assert_eq!(r.unique, brute_minimum_sets(&g).len() == 1);
    }

    #[test]
    fn isomorphism_matches_permutations(g in arb_graph(0, 7), h in arb_graph(0, 7)) {
        prop_assert_eq!(are_isomorphic(&g, &h), brute_isomorphic(&g, &h));
    }

    #[test]
    fn relabelled_copies_are_isomorphic(
        (g, perm) in arb_graph(1, 10).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let h = g.relabel(&perm);
        let map = find_isomorphism(&g, &h).expect("relabelled copy");
        prop_assert!(g.edges().all(|(u, v)| h.has_edge(map[u], map[v])));
    }

    #[test]
    fn bipartite_complement_laws(g in arb_graph(1, 10)) {
        if let Some(p) = find_bipartition(&g) {
            let bc = bipartite_complement(&g, &p).unwrap();
            prop_assert!(p.is_valid_for(&bc));
            prop_assert_eq!(g.size() + bc.size(), p.a().len() * p.b().len());
            prop_assert_eq!(bipartite_complement(&bc, &p).unwrap(), g);
        }
    }

    #[test]
    fn disjoint_closed_neighbourhoods_bound_gamma(g in arb_graph(1, 10), bits in any::<u64>()) {
        let d = VertexSet::from_bits(bits) & g.vertices();
        if closed_neighborhoods_disjoint(&g, d) {
            prop_assert!(domination_number(&g) >= d.len());
        }
    }
}

fn extremal_10_3() -> Graph {
    // a11 a12 a21 a22 b11 b12 c1 x1 y1 y2
    let edges = [
        (7, 4), (7, 5), (7, 6), (8, 0), (8, 1), (9, 2), (9, 3),
        (4, 0), (4, 1), (4, 2), (4, 3), (6, 0), (6, 1), (6, 2), (6, 3),
    ];
    Graph::from_edge_list(10, &edges).unwrap()
}

#[test]
fn extremal_10_3_private_neighbours() {
    let g = extremal_10_3();
    let d = VertexSet::from_iter([7, 8, 9]);
    let r = is_umd(&g);
    assert!(r.unique && r.perfectly_dominated && r.epn_condition_met);
    assert_eq!(r.dominating_set(), Some(d));
    assert_eq!(exterior_private_neighbors(&g, 7, d).unwrap(), VertexSet::from_iter([4, 5, 6]));
    assert_eq!(exterior_private_neighbors(&g, 8, d).unwrap(), VertexSet::from_iter([0, 1]));
    assert_eq!(find_bipartition(&g).unwrap().a(), VertexSet::from_iter([0, 1, 2, 3, 7]));
}

#[test]
fn extremal_10_3_layout_labels() {
    let c = construct_bipartite(10, 3).unwrap();
    let labels = c.layout.dot_labels();
    assert_eq!(labels[0], "x1 (D_X)");
    assert_eq!(labels[9], "c1 (C)");
    let map = find_isomorphism(&c.graph, &extremal_10_3()).unwrap();
    assert_eq!(map[0], 7);
}

/// The construction at (16,4) beats the bound with Φ read literally, so the
/// literal reading cannot be the true maximum.
#[test]
fn literal_phi_bound_is_exceeded() {
    let (n, gamma) = (16, 4);
    assert_eq!((bounds::phi(n, gamma), bounds::phi_as_printed(n, gamma)), (1, 0));
    let c = gamma.div_ceil(2);
    let literal = 2 * gamma
        + 2 * c * (gamma / 2)
        + (n - 3 * gamma).min(bounds::attachment_capacity(gamma)) * (2 * c + 1)
        + (1..=bounds::phi_as_printed(n, gamma)).map(|i| 2 * c + 1 + i.div_ceil(2)).sum::<u64>();
    let built = construct_bipartite(n, gamma).unwrap();
    let cert = verify_construction(&built.graph, &built.layout, bounds::bipartite_bound(n, gamma).unwrap());
    assert!(cert.passed, "{:?}", cert.failures().collect::<Vec<_>>());
    assert!(cert.size > literal, "{} vs {literal}", cert.size);
}

#[test]
fn search_examples() {
    let opts = SearchOptions::default();
    let c = search::count_extremal_witnesses(6, 2, 6, &opts).unwrap();
    let built = construct_bipartite(6, 2).unwrap().graph;
    assert!(c.complete && c.count >= 1);
    assert!(c.witnesses.iter().any(|w| are_isomorphic(&unidom::parse_graph6(w).unwrap(), &built)));
    assert_eq!(search::count_extremal_witnesses(6, 2, 7, &opts).unwrap().count, 0);
    let r = search::max_umd_bipartite_size(7, 2, &opts).unwrap();
    assert_eq!(r.max_size, Some(9));
    assert!(r.witnesses.is_empty());
    assert_eq!(r.graphs_scanned + r.graphs_pruned, search::labelled_pair_count(7));
}

#[test]
fn sequential_and_default_agree() {
    let seq = SearchOptions { collect_witnesses: true, execution: unidom::Execution::Sequential, ..Default::default() };
    let par = SearchOptions { collect_witnesses: true, ..Default::default() };
    let a = search::max_umd_bipartite_size(8, 2, &seq).unwrap();
    let b = search::max_umd_bipartite_size(8, 2, &par).unwrap();
    assert_eq!((a.max_size, &a.witnesses), (b.max_size, &b.witnesses));
}
