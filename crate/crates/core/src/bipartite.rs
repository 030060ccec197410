//! Two-colourings and the bipartite complement.

use serde::Serialize;

use crate::graph::{low_mask, Graph, GraphError, Vertex, VertexSet};

/// A two-colouring `(a, b)` of a graph's vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    a: VertexSet,
    b: VertexSet,
}

impl Bipartition {
    /// Partition of `0..n` with side `a` given and `b` its complement.
    pub fn from_side(n: usize, a: VertexSet) -> Result<Self, GraphError> {
        let all = VertexSet::full(n);
        if !a.is_subset(all) {
            return Err(GraphError::PartitionCover);
        }
        Ok(Bipartition { a, b: all - a })
    }

    pub fn new(n: usize, a: VertexSet, b: VertexSet) -> Result<Self, GraphError> {
        if !a.is_disjoint(b) || (a | b) != VertexSet::full(n) {
            return Err(GraphError::PartitionCover);
        }
        Ok(Bipartition { a, b })
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    /// Checks that the sides cover `g` and that no edge lies inside a side.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        if !self.a.is_disjoint(self.b) || (self.a | self.b) != g.vertices() {
            return Err(GraphError::PartitionCover);
        }
        for (u, v) in g.edges() {
            if self.a.contains(u) == self.a.contains(v) {
                return Err(GraphError::InvalidPartition(u, v));
            }
        }
        Ok(())
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }
}

impl Serialize for Bipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Bipartition", 2)?;
        st.serialize_field("a", &self.a.to_vec())?;
        st.serialize_field("b", &self.b.to_vec())?;
        st.end()
    }
}

/// Two-colours `g` by breadth-first search, one component at a time.
///
/// Each component's smallest vertex goes to side `a`. Returns `None` when an
/// odd cycle exists.
pub fn find_bipartition(g: &Graph) -> Option<Bipartition> {
    let mut a = VertexSet::EMPTY;
    let mut b = VertexSet::EMPTY;
    for root in 0..g.order() {
        if (a | b).contains(root) {
            continue;
        }
        // Alternate BFS layers between the two sides.
        let mut frontier = VertexSet::singleton(root);
        let mut on_a = true;
        while !frontier.is_empty() {
            let (mine, other) = if on_a { (&mut a, &mut b) } else { (&mut b, &mut a) };
            *mine |= frontier;
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                let nb = g.neighbors(v);
                if !nb.is_disjoint(*mine) {
                    return None;
                }
                next |= nb;
            }
            next = next - *other;
            frontier = next;
            on_a = !on_a;
        }
    }
    Some(Bipartition { a, b })
}

/// Graph on the same vertex set whose edges are exactly the cross pairs
/// `{x, y}`, `x ∈ A`, `y ∈ B`, that are not edges of `g`.
pub fn bipartite_complement(g: &Graph, p: &Bipartition) -> Result<Graph, GraphError> {
    p.validate(g)?;
    let n = g.order();
    let rows = g
        .rows()
        .iter()
        .enumerate()
        .map(|(v, &row)| {
            let opposite = if p.a.contains(v) { p.b } else { p.a };
            opposite.bits() & !row & low_mask(n)
        })
        .collect();
    Ok(Graph::from_rows_unchecked(rows))
}

/// Builds the bipartite graph with sides `a` and `b` whose cross edges are
/// selected by `mask`: bit `i * b.len() + j` joins the `i`-th vertex of `a`
/// to the `j`-th vertex of `b`.
pub(crate) fn bipartite_from_mask(n: usize, a: &[Vertex], b: &[Vertex], mask: u64) -> Graph {
    let q = b.len();
    let mut rows = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        let row = (mask >> (i * q)) & low_mask(q);
        for j in VertexSet::from_bits(row) {
            let y = b[j];
            rows[x] |= 1 << y;
            rows[y] |= 1 << x;
        }
    }
    Graph::from_rows_unchecked(rows)
}
