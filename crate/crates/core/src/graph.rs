//! Undirected simple graphs, k-partitions, budgets and the predicates every
//! solver is checked against.
//!
//! Vertex ids are 1-based and dense: a graph on `n` vertices has ids `1..=n`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// 1-based vertex id.
pub type Vertex = usize;

/// Unordered edge, stored with `u < v`.
pub type Edge = (Vertex, Vertex);

/// Sorted vertex set.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // adj[0] is unused so that adj[v] addresses vertex v directly.
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse into one.
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut edges = BTreeSet::new();
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_edges(n, edges.into_iter().collect()))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, &[])
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let edges = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        Ok(Self::from_sorted_edges(n, edges))
    }

    // `edges` must be sorted, deduplicated, in range and oriented u < v.
    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending lexicographic order, each with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v
            && (1..=self.n).contains(&u)
            && (1..=self.n).contains(&v)
            && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Full vertex set `{1, …, n}`.
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub(crate) fn check_vertex_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.iter().find(|&&v| v == 0 || v > self.n) {
            Some(&vertex) => Err(GraphError::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }
}

/// Assignment of every vertex to one of `k` parts (part ids `1..=k`).
///
/// Construction does not check the assignment; [`Instance::validate`]
/// reports out-of-range part ids and intra-part edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KPartition {
    k: usize,
    // part_of[v - 1] is the part of vertex v.
    part_of: Vec<usize>,
}

impl KPartition {
    /// `assignment[i]` is the part id of vertex `i + 1`.
    pub fn from_assignment(k: usize, assignment: Vec<usize>) -> Self {
        Self {
            k,
            part_of: assignment,
        }
    }

    /// Builds a partition from explicit vertex lists; `parts[i]` becomes part
    /// `i + 1`. Vertices of `1..=n` not mentioned get part id 0 (flagged by
    /// validation).
    pub fn from_parts(n: usize, parts: &[Vec<Vertex>]) -> Self {
        let mut part_of = vec![0; n];
        for (i, members) in parts.iter().enumerate() {
            for &v in members {
                if (1..=n).contains(&v) {
                    part_of[v - 1] = i + 1;
                }
            }
        }
        Self {
            k: parts.len(),
            part_of,
        }
    }

    /// Every vertex in part 1.
    pub fn trivial(n: usize) -> Self {
        Self {
            k: 1,
            part_of: vec![1; n],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertices covered by the assignment.
    pub fn len(&self) -> usize {
        self.part_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part_of.is_empty()
    }

    /// Part id of `v`, if `v` is within the assignment.
    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        v.checked_sub(1).and_then(|i| self.part_of.get(i)).copied()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.part_of
    }

    /// Members of each part; index `i` holds part `i + 1`.
    pub fn parts(&self) -> Vec<Vec<Vertex>> {
        let mut parts = vec![Vec::new(); self.k];
        for (i, &p) in self.part_of.iter().enumerate() {
            if (1..=self.k).contains(&p) {
                parts[p - 1].push(i + 1);
            }
        }
        parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts().iter().map(Vec::len).collect()
    }

    /// Counts how many vertices of `s` fall in each part.
    pub fn usage(&self, s: &VertexSet) -> Vec<usize> {
        let mut counts = vec![0; self.k];
        for &v in s {
            if let Some(p) = self.part_of(v).filter(|p| (1..=self.k).contains(p)) {
                counts[p - 1] += 1;
            }
        }
        counts
    }
}

/// Per-part limits on the number of selected vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Budgets(Vec<usize>);

impl Budgets {
    pub fn new(limits: Vec<usize>) -> Self {
        Self(limits)
    }

    /// `limit` for each of `k` parts.
    pub fn uniform(k: usize, limit: usize) -> Self {
        Self(vec![limit; k])
    }

    pub fn limits(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Limit of part `p` (1-based).
    pub fn limit(&self, p: usize) -> usize {
        self.0[p - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A MIN-CVCK instance: graph, k-partition and per-part budgets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub graph: Graph,
    pub partition: KPartition,
    pub budgets: Budgets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    AssignmentLength { expected: usize, found: usize },
    PartOutOfRange { vertex: Vertex, part: usize },
    BudgetLength { expected: usize, found: usize },
    IntraPartEdge { u: Vertex, v: Vertex, part: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AssignmentLength { expected, found } => {
                write!(f, "partition assigns {found} vertices, graph has {expected}")
            }
            Violation::PartOutOfRange { vertex, part } => {
                write!(f, "vertex {vertex} assigned to part {part}, outside 1..=k")
            }
            Violation::BudgetLength { expected, found } => {
                write!(f, "{found} budgets given for {expected} parts")
            }
            Violation::IntraPartEdge { u, v, part } => {
                write!(f, "edge ({u},{v}) lies inside part {part}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// A part id in `1..=k` with no vertices; its budget can never be used.
    EmptyPart(usize),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::EmptyPart(p) => write!(f, "part {p} is empty"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Instance {
    pub fn new(graph: Graph, partition: KPartition, budgets: Budgets) -> Self {
        Self {
            graph,
            partition,
            budgets,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    /// Checks that the partition is total and in range, that there is one
    /// budget per part, and that no edge joins two vertices of one part.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.graph.n();
        let k = self.partition.k();
        if self.partition.len() != n {
            report.violations.push(Violation::AssignmentLength {
                expected: n,
                found: self.partition.len(),
            });
        }
        for (i, &part) in self.partition.assignment().iter().enumerate() {
            if !(1..=k).contains(&part) {
                report.violations.push(Violation::PartOutOfRange {
                    vertex: i + 1,
                    part,
                });
            }
        }
        if self.budgets.len() != k {
            report.violations.push(Violation::BudgetLength {
                expected: k,
                found: self.budgets.len(),
            });
        }
        for &(u, v) in self.graph.edges() {
            if let (Some(pu), Some(pv)) = (self.partition.part_of(u), self.partition.part_of(v)) {
                if pu == pv {
                    report
                        .violations
                        .push(Violation::IntraPartEdge { u, v, part: pu });
                }
            }
        }
        for (i, size) in self.partition.part_sizes().into_iter().enumerate() {
            if size == 0 {
                report.warnings.push(Warning::EmptyPart(i + 1));
            }
        }
        report
    }

    /// Drops empty parts (and their budgets), renumbering the remaining
    /// parts in order.
    pub fn canonicalize(&self) -> Instance {
        let sizes = self.partition.part_sizes();
        let mut remap = vec![0; self.k() + 1];
        let mut limits = Vec::new();
        for (i, &size) in sizes.iter().enumerate() {
            if size > 0 {
                limits.push(self.budgets.limits().get(i).copied().unwrap_or(0));
                remap[i + 1] = limits.len();
            }
        }
        let assignment = self
            .partition
            .assignment()
            .iter()
            .map(|&p| remap.get(p).copied().unwrap_or(0))
            .collect();
        Instance {
            graph: self.graph.clone(),
            partition: KPartition::from_assignment(limits.len(), assignment),
            budgets: Budgets::new(limits),
        }
    }

    /// Same graph and partition with every budget set to its part size.
    pub fn unconstrained(&self) -> Instance {
        Instance {
            graph: self.graph.clone(),
            partition: self.partition.clone(),
            budgets: Budgets::new(self.partition.part_sizes()),
        }
    }
}

/// Graph on the same vertices whose edges are exactly the non-edges of `g`.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2 - g.num_edges());
    for u in 1..=n {
        let mut nbrs = g.neighbors(u).iter().peekable();
        for v in u + 1..=n {
            while nbrs.next_if(|&&w| w < v).is_some() {}
            if nbrs.next_if_eq(&&v).is_none() {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_edges(n, edges)
}

/// True iff every edge of `g` has an endpoint in `s`.
pub fn is_vertex_cover(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_vertex_set(s)?;
    Ok(g
        .edges()
        .iter()
        .all(|(u, v)| s.contains(u) || s.contains(v)))
}

/// True iff every pair of distinct vertices of `s` is adjacent in `g`.
pub fn is_clique(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_vertex_set(s)?;
    let members: Vec<Vertex> = s.iter().copied().collect();
    Ok(members
        .iter()
        .enumerate()
        .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v))))
}

/// True iff no two vertices of `s` are adjacent in `g`.
pub fn is_independent_set(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_vertex_set(s)?;
    Ok(g
        .edges()
        .iter()
        .all(|(u, v)| !(s.contains(u) && s.contains(v))))
}

/// True iff `s` takes at most `limits[i]` vertices from every part `i`.
pub fn respects_budgets(inst: &Instance, s: &VertexSet) -> bool {
    let usage = inst.partition.usage(s);
    usage
        .iter()
        .enumerate()
        .all(|(i, &used)| used <= inst.budgets.limits().get(i).copied().unwrap_or(0))
}

/// Proper coloring by smallest available color in vertex-id order; colors
/// become part ids.
pub fn greedy_partition(g: &Graph) -> KPartition {
    let n = g.n();
    let mut color = vec![0usize; n + 1];
    let mut k = 0;
    let mut taken = vec![false; n + 2];
    for v in 1..=n {
        for &w in g.neighbors(v) {
            if color[w] != 0 {
                taken[color[w]] = true;
            }
        }
        let c = (1..).find(|&c| !taken[c]).unwrap();
        color[v] = c;
        k = k.max(c);
        for &w in g.neighbors(v) {
            taken[color[w]] = false;
        }
    }
    KPartition::from_assignment(k, color[1..].to_vec())
}
