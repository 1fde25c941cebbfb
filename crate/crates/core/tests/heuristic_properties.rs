mod common;

use common::arb_instance;
use kpvc::exact::{exact_cvck, ExactStatus};
use kpvc::gen::{gen_kpartite, BudgetMode, GenRng, GenSpec};
use kpvc::heuristic::{HeuristicState, Step, VertexState};
use kpvc::{is_vertex_cover, respects_budgets, solve_cvck, CoverStatus, Instance};
use proptest::prelude::*;

/// Walks the solver one step at a time and checks every state invariant
/// after each step. Returns the number of steps taken.
fn check_stepwise(inst: &Instance) -> Result<usize, TestCaseError> {
    let mut state = HeuristicState::new(inst);
    let n = inst.n();
    let mut steps = 0;
    loop {
        let before_states: Vec<VertexState> = (1..=n).map(|v| state.vertex_state(v)).collect();
        let before_edges = state.live_edges();
        let before_ops = state.op_count();
        let step = state.step();
        prop_assert!(state.op_count() >= before_ops);

        for v in 1..=n {
            let (a, b) = (before_states[v - 1], state.vertex_state(v));
            let allowed = a == b
                || matches!(
                    (a, b),
                    (VertexState::NotUsed, _) | (VertexState::Selected, VertexState::NotSelected)
                );
            prop_assert!(allowed, "vertex {} went {:?} -> {:?}", v, a, b);
        }
        let selected = state.selected();
        let usage = inst.partition.usage(&selected);
        prop_assert_eq!(state.usage(), usage.as_slice());
        for (used, limit) in usage.iter().zip(inst.budgets.limits()) {
            prop_assert!(used <= limit);
        }
        let expected_live: Vec<_> = inst
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|(u, v)| !selected.contains(u) && !selected.contains(v))
            .collect();
        prop_assert_eq!(state.live_edges(), expected_live);

        match step {
            Step::Done => break,
            Step::Rejected(_) | Step::BudgetExceeded(_) => {
                prop_assert_eq!(state.live_edges(), before_edges);
            }
            Step::Accepted(_) => {}
        }
        steps += 1;
        prop_assert!(steps <= n);
    }
    let result = state.into_result();
    prop_assert_eq!(result, solve_cvck(inst).unwrap());
    Ok(steps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn stepwise_invariants(inst in arb_instance(14, 4)) {
        check_stepwise(&inst)?;
    }

    #[test]
    fn success_is_valid_and_never_beats_oracle(inst in arb_instance(12, 4)) {
        let result = solve_cvck(&inst).unwrap();
        let exact = exact_cvck(&inst).unwrap();
        match result.status {
            CoverStatus::Success => {
                prop_assert!(result.uncovered_edges.is_empty());
                prop_assert!(is_vertex_cover(&inst.graph, &result.cover).unwrap());
                prop_assert!(respects_budgets(&inst, &result.cover));
                prop_assert_eq!(exact.status, ExactStatus::Feasible);
                prop_assert!(result.cover.len() >= exact.size.unwrap());
            }
            CoverStatus::HeuristicFailure => {
                prop_assert!(!result.uncovered_edges.is_empty());
                for &(u, v) in &result.uncovered_edges {
                    prop_assert!(!result.cover.contains(&u) && !result.cover.contains(&v));
                }
            }
        }
        prop_assert_eq!(result.per_part_usage, inst.partition.usage(&result.cover));
    }

    #[test]
    fn deterministic(inst in arb_instance(16, 4)) {
        prop_assert_eq!(solve_cvck(&inst).unwrap(), solve_cvck(&inst).unwrap());
    }
}

#[test]
fn fuzz_generated_instances() {
    let mut rng = GenRng::new(2024);
    let modes = [BudgetMode::Exact, BudgetMode::Slack(0), BudgetMode::Slack(1)];
    for i in 0..2000 {
        let n = 2 + rng.below(39) as usize;
        let k = 1 + rng.below(n.min(6) as u64) as usize;
        let spec = GenSpec {
            n,
            k,
            density: rng.unit(),
            seed: rng.next_u64(),
            budget_mode: if i % 4 == 3 {
                BudgetMode::Fixed((0..k).map(|_| rng.below(n as u64 / 2 + 1) as usize).collect())
            } else {
                modes[i % 3].clone()
            },
        };
        let inst = gen_kpartite(&spec).unwrap();
        let result = solve_cvck(&inst).unwrap();
        if result.status == CoverStatus::Success {
            assert!(is_vertex_cover(&inst.graph, &result.cover).unwrap(), "{spec:?}");
            assert!(respects_budgets(&inst, &result.cover), "{spec:?}");
        }
        if n <= 16 {
            check_stepwise(&inst).unwrap();
        }
    }
}

#[test]
fn op_count_grows_polynomially() {
    let mean = |n: usize| {
        let total: u64 = (0..4)
            .map(|seed| {
                let inst = gen_kpartite(&GenSpec {
                    n,
                    k: 3,
                    density: 0.5,
                    seed,
                    budget_mode: BudgetMode::Slack(1),
                })
                .unwrap();
                solve_cvck(&inst).unwrap().op_count
            })
            .sum();
        total as f64 / 4.0
    };
    let (small, large) = (mean(40), mean(80));
    let exponent = (large / small).log2();
    assert!((1.5..3.2).contains(&exponent), "doubling exponent {exponent}");
}
