//! Exact solvers used as ground truth: constrained minimum vertex cover,
//! minimum vertex cover, maximum clique, and an exhaustive enumerator of all
//! optimal constrained covers.
//!
//! The search solvers work on 128-bit vertex masks, so graphs are limited to
//! [`MAX_EXACT_VERTICES`] vertices. Among optimal solutions they return the
//! lexicographically smallest sorted vertex sequence.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Instance, VertexSet, Violation};

/// Largest graph the bitmask search solvers accept.
pub const MAX_EXACT_VERTICES: usize = 128;

/// Default vertex limit for [`enumerate_min_cvck`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("invalid instance: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InstanceInvalid(Vec<Violation>),
    #[error("instance has {n} vertices, exact solver limit is {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExactStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub status: ExactStatus,
    /// Empty when infeasible.
    pub cover: VertexSet,
    /// `None` when infeasible.
    pub size: Option<usize>,
    pub per_part_usage: Vec<usize>,
    pub nodes_explored: u64,
}

type Mask = u128;

fn bit(v: usize) -> Mask {
    1 << (v - 1)
}

fn mask_to_set(mut m: Mask) -> VertexSet {
    let mut s = VertexSet::new();
    while m != 0 {
        s.insert(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    s
}

fn popcount(m: Mask) -> usize {
    m.count_ones() as usize
}

fn adjacency_masks(g: &Graph) -> Vec<Mask> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
        .collect()
}

fn check_size(n: usize) -> Result<(), ExactError> {
    if n > MAX_EXACT_VERTICES {
        return Err(ExactError::InstanceTooLarge {
            n,
            limit: MAX_EXACT_VERTICES,
        });
    }
    Ok(())
}

/// Branch-and-bound cover search with optional per-part budgets.
struct CoverSearch {
    n: usize,
    all: Mask,
    adj: Vec<Mask>,
    // (members of part, limit)
    parts: Vec<(Mask, usize)>,
    nodes: u64,
}

impl CoverSearch {
    fn new(g: &Graph, parts: Vec<(Mask, usize)>) -> Self {
        let n = g.n();
        let all = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
        Self {
            n,
            all,
            adj: adjacency_masks(g),
            parts,
            nodes: 0,
        }
    }

    fn neighbors(&self, v_index: usize) -> Mask {
        self.adj[v_index]
    }

    /// Any cover with at most `bound` vertices that contains `cover`, avoids
    /// `excluded` and respects the budgets.
    fn find(&mut self, mut cover: Mask, mut excluded: Mask, bound: usize) -> Option<Mask> {
        self.nodes += 1;
        if cover & excluded != 0 {
            return None;
        }
        loop {
            for &(members, limit) in &self.parts {
                let used = popcount(cover & members);
                if used > limit {
                    return None;
                }
                if used == limit {
                    excluded |= members & !cover;
                }
            }
            let mut forced: Mask = 0;
            let mut rest = excluded;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                forced |= self.neighbors(i);
                rest &= rest - 1;
            }
            forced &= !cover;
            if forced & excluded != 0 {
                return None;
            }
            if forced == 0 {
                break;
            }
            cover |= forced;
        }
        let size = popcount(cover);
        if size > bound {
            return None;
        }

        // Edges with an excluded endpoint are covered by propagation, so the
        // residual graph lives on the undecided vertices.
        let undecided = self.all & !cover & !excluded;
        let mut branch_vertex = None;
        let mut best_degree = 0;
        let mut matched: Mask = 0;
        let mut matching = 0;
        let mut rest = undecided;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nbrs = self.neighbors(i) & undecided;
            let degree = popcount(nbrs);
            if degree > best_degree {
                best_degree = degree;
                branch_vertex = Some(i);
            }
            if matched & (1 << i) == 0 {
                let free = nbrs & !matched;
                if free != 0 {
                    matched |= (1 << i) | (1 << free.trailing_zeros());
                    matching += 1;
                }
            }
        }
        let Some(u) = branch_vertex else {
            return Some(cover);
        };
        if size + matching > bound {
            return None;
        }
        let ubit: Mask = 1 << u;
        self.find(cover | ubit, excluded, bound)
            .or_else(|| self.find(cover, excluded | ubit, bound))
    }

    /// Minimum size of a budget-respecting cover, or `None` if none exists.
    fn optimum(&mut self) -> Option<(usize, Mask)> {
        let mut best = self.find(0, 0, self.n)?;
        while let Some(better) = popcount(best)
            .checked_sub(1)
            .and_then(|bound| self.find(0, 0, bound))
        {
            best = better;
        }
        Some((popcount(best), best))
    }

    /// Lexicographically smallest cover of size `size`, starting from any
    /// witness of that size.
    fn lex_smallest(&mut self, size: usize, mut witness: Mask) -> Mask {
        let mut fixed_in: Mask = 0;
        let mut fixed_out: Mask = 0;
        for i in 0..self.n {
            let b: Mask = 1 << i;
            if witness & b != 0 {
                fixed_in |= b;
                continue;
            }
            match self.find(fixed_in | b, fixed_out, size) {
                Some(w) => {
                    witness = w;
                    fixed_in |= b;
                }
                None => fixed_out |= b,
            }
        }
        fixed_in
    }

    fn solve(&mut self) -> Option<Mask> {
        let (size, witness) = self.optimum()?;
        Some(self.lex_smallest(size, witness))
    }
}

fn part_masks(inst: &Instance) -> Vec<(Mask, usize)> {
    inst.partition
        .parts()
        .iter()
        .zip(inst.budgets.limits())
        .map(|(members, &limit)| (members.iter().fold(0, |m, &v| m | bit(v)), limit))
        .collect()
}

fn checked_instance(inst: &Instance) -> Result<(), ExactError> {
    let report = inst.validate();
    if !report.is_ok() {
        return Err(ExactError::InstanceInvalid(report.violations));
    }
    check_size(inst.n())
}

/// Minimum-size vertex cover respecting the per-part budgets.
pub fn exact_cvck(inst: &Instance) -> Result<ExactResult, ExactError> {
    checked_instance(inst)?;
    let mut search = CoverSearch::new(&inst.graph, part_masks(inst));
    let found = search.solve();
    Ok(match found {
        Some(mask) => {
            let cover = mask_to_set(mask);
            ExactResult {
                status: ExactStatus::Feasible,
                size: Some(cover.len()),
                per_part_usage: inst.partition.usage(&cover),
                cover,
                nodes_explored: search.nodes,
            }
        }
        None => ExactResult {
            status: ExactStatus::Infeasible,
            cover: VertexSet::new(),
            size: None,
            per_part_usage: vec![0; inst.k()],
            nodes_explored: search.nodes,
        },
    })
}

/// Decision form: is there a budget-respecting cover with at most
/// `max_size` vertices?
pub fn decide_cvck(inst: &Instance, max_size: usize) -> Result<bool, ExactError> {
    checked_instance(inst)?;
    let mut search = CoverSearch::new(&inst.graph, part_masks(inst));
    Ok(search.find(0, 0, max_size).is_some())
}

/// Minimum vertex cover of `g`, ignoring any partition.
pub fn exact_min_vc(g: &Graph) -> Result<VertexSet, ExactError> {
    check_size(g.n())?;
    let mut search = CoverSearch::new(g, Vec::new());
    let mask = search
        .solve()
        .expect("the full vertex set always covers");
    Ok(mask_to_set(mask))
}

// For equal-size sets, the one holding the lowest differing vertex sorts
// first.
fn lex_less(a: Mask, b: Mask) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

struct CliqueSearch {
    adj: Vec<Mask>,
    best: Mask,
    best_size: usize,
}

impl CliqueSearch {
    // Bron–Kerbosch with pivoting over (clique, candidates, already-tried).
    fn expand(&mut self, clique: Mask, mut candidates: Mask, mut tried: Mask) {
        let size = popcount(clique);
        if candidates == 0 {
            if tried == 0
                && (size > self.best_size || (size == self.best_size && lex_less(clique, self.best)))
            {
                self.best = clique;
                self.best_size = size;
            }
            return;
        }
        if size + popcount(candidates) < self.best_size {
            return;
        }
        let pool = candidates | tried;
        let mut pivot = pool.trailing_zeros() as usize;
        let mut pivot_hits = 0;
        let mut rest = pool;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let hits = popcount(candidates & self.adj[i]);
            if hits > pivot_hits {
                pivot_hits = hits;
                pivot = i;
            }
        }
        let mut branch = candidates & !self.adj[pivot];
        while branch != 0 {
            let i = branch.trailing_zeros() as usize;
            branch &= branch - 1;
            let b: Mask = 1 << i;
            self.expand(clique | b, candidates & self.adj[i], tried & self.adj[i]);
            candidates &= !b;
            tried |= b;
        }
    }
}

/// Maximum clique of `g`.
pub fn exact_max_clique(g: &Graph) -> Result<VertexSet, ExactError> {
    check_size(g.n())?;
    let n = g.n();
    let all = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
    let mut search = CliqueSearch {
        adj: adjacency_masks(g),
        best: 0,
        best_size: 0,
    };
    search.expand(0, all, 0);
    Ok(mask_to_set(search.best))
}

/// All minimum-size budget-respecting covers, by checking every subset.
/// Empty iff the instance is infeasible. Sorted.
pub fn enumerate_min_cvck(inst: &Instance, limit: usize) -> Result<Vec<VertexSet>, ExactError> {
    let report = inst.validate();
    if !report.is_ok() {
        return Err(ExactError::InstanceInvalid(report.violations));
    }
    let n = inst.n();
    if n > limit.min(63) {
        return Err(ExactError::InstanceTooLarge {
            n,
            limit: limit.min(63),
        });
    }
    let edges: Vec<u64> = inst
        .graph
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << (u - 1)) | (1u64 << (v - 1)))
        .collect();
    let parts: Vec<(u64, u32)> = inst
        .partition
        .parts()
        .iter()
        .zip(inst.budgets.limits())
        .map(|(members, &lim)| {
            let m = members.iter().fold(0u64, |m, &v| m | (1 << (v - 1)));
            (m, lim.min(u32::MAX as usize) as u32)
        })
        .collect();
    let mut best = u32::MAX;
    let mut found: Vec<u64> = Vec::new();
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones();
        if size > best
            || !edges.iter().all(|&e| s & e != 0)
            || !parts.iter().all(|&(m, lim)| (s & m).count_ones() <= lim)
        {
            continue;
        }
        if size < best {
            best = size;
            found.clear();
        }
        found.push(s);
    }
    let mut covers: Vec<VertexSet> = found
        .into_iter()
        .map(|s| mask_to_set(s as Mask))
        .collect();
    covers.sort();
    Ok(covers)
}
