//! Seeded instance generators: random k-partite graphs, uniform random
//! trees, and complete k-partite graphs.
//!
//! All randomness comes from a SplitMix64 stream seeded with the given
//! 64-bit seed. Derived draws are defined so that other implementations can
//! reproduce the exact same instances:
//!
//! * unit float: `(x >> 11) * 2^-53`, in `[0, 1)`;
//! * integer below `m`: the high 64 bits of the 128-bit product `x * m`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::baseline::two_approx_vc;
use crate::exact::exact_min_vc;
use crate::graph::{Budgets, Graph, Instance, KPartition, Vertex, VertexSet};

/// Largest `n` for which reference covers come from the exact solver;
/// above it the 2-approximation cover is used.
pub const REFERENCE_EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    SpecInvalid(String),
}

/// How per-part budgets are derived for a generated graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BudgetMode {
    /// Per-part usage of a reference minimum cover.
    Exact,
    /// Reference usage plus the given slack on every part.
    Slack(usize),
    /// Given limits, used verbatim (may be infeasible).
    Fixed(Vec<usize>),
}

impl fmt::Display for BudgetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetMode::Exact => write!(f, "exact"),
            BudgetMode::Slack(s) => write!(f, "slack:{s}"),
            BudgetMode::Fixed(limits) => {
                let joined: Vec<String> = limits.iter().map(ToString::to_string).collect();
                write!(f, "fixed:{}", joined.join(";"))
            }
        }
    }
}

impl FromStr for BudgetMode {
    type Err = GenError;

    /// Accepts `exact`, `slack:<s>` and `fixed:<l1>,<l2>,…` (`;` also
    /// separates limits).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenError::SpecInvalid(format!("unrecognized budget mode '{s}'"));
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        match name {
            "exact" if arg.is_empty() => Ok(BudgetMode::Exact),
            "slack" => arg.parse().map(BudgetMode::Slack).map_err(|_| bad()),
            "fixed" => arg
                .split([',', ';'])
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map(BudgetMode::Fixed)
                .map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub k: usize,
    pub density: f64,
    pub seed: u64,
    pub budget_mode: BudgetMode,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.k == 0 || self.k > self.n {
            return Err(GenError::SpecInvalid(format!(
                "need 1 <= k <= n, got n={} k={}",
                self.n, self.k
            )));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(GenError::SpecInvalid(format!(
                "density {} outside [0, 1]",
                self.density
            )));
        }
        if let BudgetMode::Fixed(limits) = &self.budget_mode {
            if limits.len() != self.k {
                return Err(GenError::SpecInvalid(format!(
                    "{} fixed budgets given for {} parts",
                    limits.len(),
                    self.k
                )));
            }
        }
        Ok(())
    }
}

/// SplitMix64 stream with the derived draws documented at module level.
#[derive(Debug, Clone)]
pub struct GenRng(SplitMix64);

impl GenRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..m`; `m` must be positive.
    pub fn below(&mut self, m: u64) -> u64 {
        ((self.next_u64() as u128 * m as u128) >> 64) as u64
    }
}

/// Sizes of `k` parts over `n` vertices, differing by at most one, with the
/// extra vertices going to the lowest part ids.
pub fn even_part_sizes(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

fn contiguous_partition(sizes: &[usize]) -> KPartition {
    let assignment = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i + 1, s))
        .collect();
    KPartition::from_assignment(sizes.len(), assignment)
}

fn reference_cover(g: &Graph) -> VertexSet {
    if g.n() <= REFERENCE_EXACT_LIMIT {
        exact_min_vc(g).expect("within exact limit")
    } else {
        two_approx_vc(g)
    }
}

fn derive_budgets(
    mode: &BudgetMode,
    partition: &KPartition,
    reference: impl FnOnce() -> VertexSet,
) -> Budgets {
    match mode {
        BudgetMode::Fixed(limits) => Budgets::new(limits.clone()),
        BudgetMode::Exact => Budgets::new(partition.usage(&reference())),
        BudgetMode::Slack(s) => {
            Budgets::new(partition.usage(&reference()).iter().map(|u| u + s).collect())
        }
    }
}

/// Random k-partite instance: contiguous, evenly sized parts; each
/// inter-part pair `(u, v)`, `u < v`, visited in lexicographic order, is an
/// edge iff a unit draw falls below `density`.
pub fn gen_kpartite(spec: &GenSpec) -> Result<Instance, GenError> {
    spec.validate()?;
    let partition = contiguous_partition(&even_part_sizes(spec.n, spec.k));
    let mut rng = GenRng::new(spec.seed);
    let mut edges = Vec::new();
    for u in 1..=spec.n {
        for v in u + 1..=spec.n {
            if partition.part_of(u) != partition.part_of(v) && rng.unit() < spec.density {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(spec.n, &edges).expect("generated edges are in range");
    let budgets = derive_budgets(&spec.budget_mode, &partition, || reference_cover(&graph));
    Ok(Instance::new(graph, partition, budgets))
}

/// Uniform random labeled tree on `n` vertices with Slack(1) budgets.
pub fn gen_tree(n: usize, seed: u64) -> Result<Instance, GenError> {
    gen_tree_with_budgets(n, seed, &BudgetMode::Slack(1))
}

/// Uniform random labeled tree (decoded from a random Prüfer sequence),
/// split into two parts by BFS depth parity from vertex 1. A single vertex
/// gives a single part.
pub fn gen_tree_with_budgets(n: usize, seed: u64, mode: &BudgetMode) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::SpecInvalid("tree needs at least one vertex".into()));
    }
    let mut rng = GenRng::new(seed);
    let edges = match n {
        1 => Vec::new(),
        2 => vec![(1, 2)],
        _ => {
            let code: Vec<Vertex> = (0..n - 2).map(|_| rng.below(n as u64) as usize + 1).collect();
            prufer_decode(n, &code)
        }
    };
    let graph = Graph::new(n, &edges).expect("tree edges are in range");
    let (order, parent, depth) = bfs_tree(&graph);
    let k = if n == 1 { 1 } else { 2 };
    let partition = KPartition::from_assignment(k, (1..=n).map(|v| 1 + depth[v] % 2).collect());
    if let BudgetMode::Fixed(limits) = mode {
        if limits.len() != k {
            return Err(GenError::SpecInvalid(format!(
                "{} fixed budgets given for {k} parts",
                limits.len()
            )));
        }
    }
    let budgets = derive_budgets(mode, &partition, || tree_min_vc(&order, &parent));
    Ok(Instance::new(graph, partition, budgets))
}

fn prufer_decode(n: usize, code: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let mut degree = vec![1usize; n + 1];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

// BFS from vertex 1: visiting order, parents (0 for the root) and depths.
fn bfs_tree(g: &Graph) -> (Vec<Vertex>, Vec<Vertex>, Vec<usize>) {
    let n = g.n();
    let mut parent = vec![0; n + 1];
    let mut depth = vec![usize::MAX; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([1]);
    depth[1] = 0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (order, parent, depth)
}

// Leaves-up greedy: an edge to the parent that is still uncovered puts the
// parent in the cover. Minimum for trees.
fn tree_min_vc(order: &[Vertex], parent: &[Vertex]) -> VertexSet {
    let mut in_cover = vec![false; parent.len()];
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != 0 && !in_cover[v] && !in_cover[p] {
            in_cover[p] = true;
        }
    }
    (1..parent.len()).filter(|&v| in_cover[v]).collect()
}

/// Complete k-partite graph with the given part sizes; budgets equal part
/// sizes.
pub fn gen_complete_kpartite(sizes: &[usize]) -> Result<Instance, GenError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(GenError::SpecInvalid(format!(
            "part sizes must be non-empty and positive, got {sizes:?}"
        )));
    }
    let n: usize = sizes.iter().sum();
    let partition = contiguous_partition(sizes);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if partition.part_of(u) != partition.part_of(v) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("generated edges are in range");
    Ok(Instance::new(graph, partition, Budgets::new(sizes.to_vec())))
}
