mod common;

use common::{arb_graph, arb_instance, brute_max_clique_size, brute_max_independent_size, brute_min_cvck_size, brute_min_vc_size};
use kpvc::exact::{enumerate_min_cvck, exact_cvck, exact_max_clique, exact_min_vc, ExactStatus, DEFAULT_ENUMERATION_LIMIT};
use kpvc::{complement, is_clique, is_vertex_cover, respects_budgets, Budgets, Instance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cvck_matches_enumeration(inst in arb_instance(11, 4)) {
        let exact = exact_cvck(&inst).unwrap();
        let all = enumerate_min_cvck(&inst, DEFAULT_ENUMERATION_LIMIT).unwrap();
        prop_assert_eq!(exact.size, brute_min_cvck_size(&inst));
        match exact.status {
            ExactStatus::Feasible => {
                prop_assert!(is_vertex_cover(&inst.graph, &exact.cover).unwrap());
                prop_assert!(respects_budgets(&inst, &exact.cover));
                // Lexicographically smallest among all optimal covers.
                let smallest = all.iter().min_by_key(|s| s.iter().copied().collect::<Vec<_>>()).unwrap();
                prop_assert_eq!(&exact.cover, smallest);
                prop_assert!(all.iter().all(|s| s.len() == exact.cover.len()));
            }
            ExactStatus::Infeasible => prop_assert!(all.is_empty()),
        }
    }

    #[test]
    fn unlimited_budgets_give_min_vc(inst in arb_instance(12, 0)) {
        let n = inst.n();
        let open = Instance::new(inst.graph.clone(), inst.partition.clone(), Budgets::uniform(inst.k(), n));
        let constrained = exact_cvck(&open).unwrap();
        let plain = exact_min_vc(&inst.graph).unwrap();
        prop_assert_eq!(constrained.size, Some(plain.len()));
        prop_assert_eq!(plain.len(), brute_min_vc_size(&inst.graph));
    }

    #[test]
    fn max_clique_matches_brute_force(g in arb_graph(10)) {
        let clique = exact_max_clique(&g).unwrap();
        prop_assert!(is_clique(&g, &clique).unwrap());
        prop_assert_eq!(clique.len(), brute_max_clique_size(&g));
    }

    #[test]
    fn clique_plus_complement_cover_is_n(g in arb_graph(10)) {
        let clique = exact_max_clique(&g).unwrap().len();
        let cover = exact_min_vc(&complement(&g)).unwrap().len();
        prop_assert_eq!(clique + cover, g.n());
    }

    #[test]
    fn gallai_identity(g in arb_graph(10)) {
        prop_assert_eq!(exact_min_vc(&g).unwrap().len() + brute_max_independent_size(&g), g.n());
    }

    #[test]
    fn raising_a_budget_never_hurts(inst in arb_instance(10, 3), which in any::<usize>(), extra in 1..3usize) {
        let mut limits = inst.budgets.limits().to_vec();
        let i = which % limits.len();
        limits[i] += extra;
        let raised = Instance::new(inst.graph.clone(), inst.partition.clone(), Budgets::new(limits));
        let before = exact_cvck(&inst).unwrap();
        let after = exact_cvck(&raised).unwrap();
        if let Some(s) = before.size {
            prop_assert!(after.size.is_some_and(|t| t <= s));
        }
    }
}
