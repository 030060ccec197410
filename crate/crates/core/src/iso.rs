//! Isomorphism testing for small graphs.
//!
//! Both graphs are refined together (degree, then the multiset of neighbour
//! colours, until stable) so colour ids are comparable across them; a
//! backtracking search then maps vertices only within matching colour classes.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex};

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A bijection `map` with `{u, v} ∈ E(g)` iff `{map[u], map[v]} ∈ E(h)`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    if g.order() != h.order() || g.size() != h.size() {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let (cg, ch) = refine(g, h)?;
    let n = g.order();

    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    // Small classes first; ties broken towards vertices touching the prefix.
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .min_by_key(|&v| {
                let touches = g.rows()[v] & placed != 0;
                (class_size[&cg[v]], !touches, v)
            })
            .expect("vertices remain");
        placed |= 1 << next;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[u32],
    ch: &[u32],
    order: &[Vertex],
    depth: usize,
    map: &mut [Vertex],
    used: &mut u64,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.order() {
        if *used >> w & 1 == 1 || ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        *used |= 1 << w;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << w);
        map[v] = usize::MAX;
    }
    false
}

/// Joint colour refinement. `None` when the colour histograms diverge.
fn refine(g: &Graph, h: &Graph) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut cg: Vec<u32> = (0..g.order()).map(|v| g.degree(v) as u32).collect();
    let mut ch: Vec<u32> = (0..h.order()).map(|v| h.degree(v) as u32).collect();
    let mut classes = usize::MAX;
    loop {
        let sig = |graph: &Graph, col: &[u32], v: Vertex| {
            let mut nb: Vec<u32> = graph.neighbors(v).iter().map(|u| col[u]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            ids.entry(s.clone()).or_insert(0u32);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();

        let mut hist_g = cg.clone();
        let mut hist_h = ch.clone();
        hist_g.sort_unstable();
        hist_h.sort_unstable();
        if hist_g != hist_h {
            return None;
        }
        if ids.len() == classes {
            return Some((cg, ch));
        }
        classes = ids.len();
    }
}
