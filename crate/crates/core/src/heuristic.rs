//! Greedy max-degree heuristic for MIN-CVCK with a feasibility lookahead.
//!
//! The solver repeatedly takes the unused vertex of highest live degree. If
//! its part still has budget the vertex is tentatively selected and its
//! incident edges are removed; a greedy lookahead ([`HeuristicState::make_decision`])
//! then checks that the remaining edges can still be covered from unused
//! vertices within the residual budgets. A failed lookahead reverts the
//! selection. Vertices that are rejected, either for lack of budget or by
//! the lookahead, are never reconsidered.
//!
//! Every elementary step is charged to an operation counter:
//! one unit per vertex examined by `extract_max`, per edge removed or
//! restored, per part visited by the lookahead, and per candidate examined
//! in each lookahead pick.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Instance, Vertex, VertexSet, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeuristicError {
    #[error("invalid instance: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InstanceInvalid(Vec<Violation>),
}

/// Per-vertex label. Transitions: `NotUsed → Selected`, `NotUsed →
/// NotSelected`, `Selected → NotSelected` (revert). Nothing returns to
/// `NotUsed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexState {
    NotUsed,
    Selected,
    NotSelected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverStatus {
    Success,
    HeuristicFailure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub status: CoverStatus,
    pub cover: VertexSet,
    pub per_part_usage: Vec<usize>,
    pub op_count: u64,
    /// Live edges left when the loop stopped; empty iff `Success`.
    pub uncovered_edges: Vec<Edge>,
}

/// Outcome of one iteration of the main loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// No unused vertex with a live edge remains.
    Done,
    /// The vertex's part had no budget left.
    BudgetExceeded(Vertex),
    /// Selected and kept.
    Accepted(Vertex),
    /// Selected, then reverted after the lookahead failed.
    Rejected(Vertex),
}

/// Mutable solver state over an immutable instance. The working graph is an
/// overlay of live flags on the instance's edges.
#[derive(Debug, Clone)]
pub struct HeuristicState<'a> {
    inst: &'a Instance,
    // 0-based part index per vertex; index 0 unused.
    part: Vec<usize>,
    members: Vec<Vec<Vertex>>,
    // (neighbor, edge index) per vertex.
    incident: Vec<Vec<(Vertex, usize)>>,
    live: Vec<bool>,
    live_degree: Vec<usize>,
    live_count: usize,
    state: Vec<VertexState>,
    used: Vec<usize>,
    stash: Vec<usize>,
    op_count: u64,
}

impl<'a> HeuristicState<'a> {
    /// Fresh state. `inst` must pass validation.
    pub fn new(inst: &'a Instance) -> Self {
        let g = &inst.graph;
        let n = g.n();
        let mut part = vec![0; n + 1];
        for v in g.vertices() {
            part[v] = inst.partition.part_of(v).expect("validated partition") - 1;
        }
        let mut incident = vec![Vec::new(); n + 1];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            incident[u].push((v, e));
            incident[v].push((u, e));
        }
        let live_degree = (0..=n)
            .map(|v| if v == 0 { 0 } else { g.degree(v) })
            .collect();
        Self {
            inst,
            part,
            members: inst.partition.parts(),
            incident,
            live: vec![true; g.num_edges()],
            live_degree,
            live_count: g.num_edges(),
            state: vec![VertexState::NotUsed; n + 1],
            used: vec![0; inst.k()],
            stash: Vec::new(),
            op_count: 0,
        }
    }

    pub fn vertex_state(&self, v: Vertex) -> VertexState {
        self.state[v]
    }

    /// Selected vertices per part (index `i` is part `i + 1`).
    pub fn usage(&self) -> &[usize] {
        &self.used
    }

    pub fn op_count(&self) -> u64 {
        self.op_count
    }

    pub fn live_degree(&self, v: Vertex) -> usize {
        self.live_degree[v]
    }

    /// Edges of the working graph, ascending.
    pub fn live_edges(&self) -> Vec<Edge> {
        self.inst
            .graph
            .edges()
            .iter()
            .zip(&self.live)
            .filter_map(|(&e, &live)| live.then_some(e))
            .collect()
    }

    pub fn selected(&self) -> VertexSet {
        self.inst
            .graph
            .vertices()
            .filter(|&v| self.state[v] == VertexState::Selected)
            .collect()
    }

    fn limit(&self, part: usize) -> usize {
        self.inst.budgets.limits()[part]
    }

    /// Unused vertex of maximum live degree (at least 1), lowest id on ties.
    pub fn extract_max(&mut self) -> Option<Vertex> {
        let n = self.inst.n();
        self.op_count += n as u64;
        let mut best = None;
        let mut best_degree = 0;
        for v in 1..=n {
            if self.state[v] == VertexState::NotUsed && self.live_degree[v] > best_degree {
                best = Some(v);
                best_degree = self.live_degree[v];
            }
        }
        best
    }

    /// Greedy check that the live edges can be covered by unused vertices
    /// within the residual budgets.
    ///
    /// Parts are visited in descending residual budget (lower part id first
    /// on ties). Within a part, up to its residual budget, the unused vertex
    /// touching the most not-yet-visited edges is picked (lowest id on ties,
    /// at least one such edge required) and its edges are marked visited.
    /// Returns false iff some live edge is never visited. Only the operation
    /// counter is modified.
    pub fn make_decision(&mut self) -> bool {
        let mut remaining = self.live_count;
        if remaining == 0 {
            return true;
        }
        let mut order: Vec<(usize, usize)> = (0..self.used.len())
            .map(|p| (p, self.limit(p).saturating_sub(self.used[p])))
            .collect();
        order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

        let mut unvisited = self.live_degree.clone();
        let mut in_pick = vec![false; self.state.len()];
        for (p, residual) in order {
            self.op_count += 1;
            for _ in 0..residual {
                let mut pick = None;
                let mut pick_count = 0;
                for &v in &self.members[p] {
                    self.op_count += 1;
                    if self.state[v] == VertexState::NotUsed && !in_pick[v] && unvisited[v] > pick_count {
                        pick = Some(v);
                        pick_count = unvisited[v];
                    }
                }
                let Some(v) = pick else { break };
                in_pick[v] = true;
                for &(w, e) in &self.incident[v] {
                    if self.live[e] && !in_pick[w] {
                        unvisited[w] -= 1;
                        remaining -= 1;
                    }
                }
                unvisited[v] = 0;
                if remaining == 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Runs one iteration of the main loop.
    pub fn step(&mut self) -> Step {
        let Some(u) = self.extract_max() else {
            return Step::Done;
        };
        let p = self.part[u];
        if self.used[p] + 1 > self.limit(p) {
            self.state[u] = VertexState::NotSelected;
            return Step::BudgetExceeded(u);
        }
        self.state[u] = VertexState::Selected;
        self.used[p] += 1;
        self.stash.clear();
        for &(w, e) in &self.incident[u] {
            if self.live[e] {
                self.live[e] = false;
                self.live_degree[u] -= 1;
                self.live_degree[w] -= 1;
                self.live_count -= 1;
                self.stash.push(e);
                self.op_count += 1;
            }
        }
        if self.make_decision() {
            return Step::Accepted(u);
        }
        self.state[u] = VertexState::NotSelected;
        self.used[p] -= 1;
        let edges = self.inst.graph.edges();
        for &e in &self.stash {
            let (a, b) = edges[e];
            self.live[e] = true;
            self.live_degree[a] += 1;
            self.live_degree[b] += 1;
            self.live_count += 1;
            self.op_count += 1;
        }
        Step::Rejected(u)
    }

    pub fn into_result(self) -> CoverResult {
        let uncovered_edges = self.live_edges();
        let status = if uncovered_edges.is_empty() {
            CoverStatus::Success
        } else {
            CoverStatus::HeuristicFailure
        };
        CoverResult {
            status,
            cover: self.selected(),
            per_part_usage: self.used,
            op_count: self.op_count,
            uncovered_edges,
        }
    }
}

/// Runs the heuristic to completion. Deterministic for a fixed instance.
pub fn solve_cvck(inst: &Instance) -> Result<CoverResult, HeuristicError> {
    let report = inst.validate();
    if !report.is_ok() {
        return Err(HeuristicError::InstanceInvalid(report.violations));
    }
    let mut state = HeuristicState::new(inst);
    // Every non-final step moves one vertex out of NotUsed for good.
    let mut steps = 0;
    while state.step() != Step::Done {
        steps += 1;
        assert!(steps <= inst.n(), "heuristic loop exceeded n iterations");
    }
    Ok(state.into_result())
}
