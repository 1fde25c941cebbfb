//! Constrained minimum vertex cover on k-partite graphs (MIN-CVCK).
//!
//! * [`graph`]: graphs, partitions, budgets, instances and cover predicates.
//! * [`heuristic`]: the greedy max-degree solver with budget lookahead.
//! * [`exact`]: branch-and-bound and exhaustive oracles.
//! * [`baseline`]: the maximal-matching 2-approximation.
//! * [`reduction`]: CLIQUE to VERTEX-COVER through the complement graph.
//! * [`gen`]: seeded instance generators.
//! * [`io`]: instance file format and result output.
//! * [`bench`]: benchmark harness and summary statistics.

pub mod baseline;
pub mod bench;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod heuristic;
pub mod io;
pub mod reduction;

pub use graph::{
    complement, greedy_partition, is_clique, is_vertex_cover, respects_budgets, Budgets, Edge,
    Graph, GraphError, Instance, KPartition, ValidationReport, Vertex, VertexSet,
};
pub use heuristic::{solve_cvck, CoverResult, CoverStatus};
