//! Maximal-matching 2-approximation for unconstrained vertex cover.

use crate::graph::{Edge, Graph, VertexSet};

/// Edges picked by the matching procedure: scanning edges in lexicographic
/// order, an edge is taken when neither endpoint is covered yet.
pub fn two_approx_matching(g: &Graph) -> Vec<Edge> {
    let mut covered = vec![false; g.n() + 1];
    let mut picked = Vec::new();
    for &(u, v) in g.edges() {
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            picked.push((u, v));
        }
    }
    picked
}

/// Both endpoints of every matched edge. At most twice the optimum.
pub fn two_approx_vc(g: &Graph) -> VertexSet {
    two_approx_matching(g)
        .into_iter()
        .flat_map(|(u, v)| [u, v])
        .collect()
}
