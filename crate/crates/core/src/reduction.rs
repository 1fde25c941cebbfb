//! CLIQUE to VERTEX-COVER via the complement graph, with certificate
//! translation in both directions.
//!
//! `g` has a clique of size `k` iff `complement(g)` has a vertex cover of
//! size `n - k`; the certificates are set complements of each other.
//! The complement of a k-partite graph is generally not k-partite, so these
//! functions work on plain graphs.

use thiserror::Error;

use crate::graph::{complement, is_clique, is_vertex_cover, Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clique size {k} outside 0..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("vertex set is not a clique of the graph")]
    NotAClique,
    #[error("vertex set is not a vertex cover of the complement graph")]
    NotACover,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub complement_graph: Graph,
    pub target_cover_size: usize,
}

/// Maps the clique instance `(g, k)` to the vertex-cover instance
/// `(complement(g), n - k)`.
pub fn reduce_clique_to_vc(g: &Graph, k_clique: usize) -> Result<ReductionOutput, ReductionError> {
    let n = g.n();
    if k_clique > n {
        return Err(ReductionError::KOutOfRange { k: k_clique, n });
    }
    Ok(ReductionOutput {
        complement_graph: complement(g),
        target_cover_size: n - k_clique,
    })
}

/// `V \ clique`, a vertex cover of the complement.
pub fn clique_cert_to_cover(g: &Graph, clique: &VertexSet) -> Result<VertexSet, ReductionError> {
    if !is_clique(g, clique)? {
        return Err(ReductionError::NotAClique);
    }
    Ok(g.vertices().filter(|v| !clique.contains(v)).collect())
}

/// `V \ cover`, a clique of `g`, given a vertex cover of `complement(g)`.
pub fn cover_cert_to_clique(g: &Graph, cover: &VertexSet) -> Result<VertexSet, ReductionError> {
    if !is_vertex_cover(&complement(g), cover)? {
        return Err(ReductionError::NotACover);
    }
    Ok(g.vertices().filter(|v| !cover.contains(v)).collect())
}
