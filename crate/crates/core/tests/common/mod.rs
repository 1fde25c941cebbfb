#![allow(dead_code)]

use kpvc::{Budgets, Graph, Instance, KPartition, VertexSet};
use proptest::prelude::*;

/// Graph on `n` vertices from a bit per unordered pair, in lexicographic
/// pair order.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if bits.get(i).copied().unwrap_or(false) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Random valid instance: arbitrary assignment to `k` parts, random
/// inter-part edges, budgets in `0..=max_budget`.
pub fn arb_instance(max_n: usize, max_budget: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1..=4usize).prop_flat_map(move |(n, k_cap)| {
        let k = k_cap.min(n);
        (
            proptest::collection::vec(1..=k, n),
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec(0..=max_budget, k),
        )
            .prop_map(move |(assignment, bits, limits)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 1..=n {
                    for v in u + 1..=n {
                        if bits[i] && assignment[u - 1] != assignment[v - 1] {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                Instance::new(
                    Graph::new(n, &edges).unwrap(),
                    KPartition::from_assignment(k, assignment),
                    Budgets::new(limits),
                )
            })
    })
}

pub fn subset(mask: u32) -> VertexSet {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn covers(g: &Graph, mask: u32) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| mask >> (u - 1) & 1 == 1 || mask >> (v - 1) & 1 == 1)
}

/// Minimum vertex cover size by checking every subset.
pub fn brute_min_vc_size(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|&m| covers(g, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Maximum independent set size by checking every subset.
pub fn brute_max_independent_size(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|&m| {
            g.edges()
                .iter()
                .all(|&(u, v)| !(m >> (u - 1) & 1 == 1 && m >> (v - 1) & 1 == 1))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

/// Maximum clique size by checking every subset.
pub fn brute_max_clique_size(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|&m| {
            let s = subset(m);
            s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

/// Minimum budget-respecting cover size by checking every subset.
pub fn brute_min_cvck_size(inst: &Instance) -> Option<usize> {
    (0u32..1 << inst.n())
        .filter(|&m| covers(&inst.graph, m))
        .filter(|&m| {
            let usage = inst.partition.usage(&subset(m));
            usage.iter().zip(inst.budgets.limits()).all(|(u, l)| u <= l)
        })
        .map(|m| m.count_ones() as usize)
        .min()
}
