//! Unique minimum domination in small graphs.
//!
//! Bitset graphs (up to 64 vertices), an exact domination solver, extremal
//! edge-count bounds, explicit extremal constructions and exhaustive search
//! oracles over small bipartite graphs.

pub mod bipartite;
pub mod bounds;
pub mod constructions;
pub mod domination;
mod exec;
pub mod formats;
pub mod graph;
pub mod iso;
pub mod search;

pub use bipartite::{bipartite_complement, find_bipartition, Bipartition};
pub use domination::{domination_number, is_umd, DominationReport, Solver, UmdStatus};
pub use exec::Execution;
pub use formats::{emit_graph6, parse_graph, parse_graph6};
pub use graph::{Graph, GraphError, Vertex, VertexSet, MAX_VERTICES};
