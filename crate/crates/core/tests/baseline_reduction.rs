mod common;

use common::{arb_graph, brute_min_vc_size, graph_from_bits, subset};
use kpvc::baseline::{two_approx_matching, two_approx_vc};
use kpvc::exact::{exact_max_clique, exact_min_vc};
use kpvc::reduction::{clique_cert_to_cover, cover_cert_to_clique, reduce_clique_to_vc};
use kpvc::{complement, is_clique, is_vertex_cover, VertexSet};
use proptest::prelude::*;

proptest! {
    #[test]
    fn two_approx_is_a_cover_from_a_matching(g in arb_graph(14)) {
        let matching = two_approx_matching(&g);
        let cover = two_approx_vc(&g);
        prop_assert!(is_vertex_cover(&g, &cover).unwrap());
        prop_assert_eq!(cover.len(), 2 * matching.len());
        let endpoints: VertexSet = matching.iter().flat_map(|&(u, v)| [u, v]).collect();
        prop_assert_eq!(endpoints.len(), 2 * matching.len());
        for &(u, v) in &matching {
            prop_assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn two_approx_within_factor_two(g in arb_graph(12)) {
        let optimum = exact_min_vc(&g).unwrap().len();
        prop_assert_eq!(optimum, brute_min_vc_size(&g));
        prop_assert!(two_approx_vc(&g).len() <= 2 * optimum);
    }

    #[test]
    fn reduction_preserves_optimum(g in arb_graph(10)) {
        let clique = exact_max_clique(&g).unwrap();
        let out = reduce_clique_to_vc(&g, clique.len()).unwrap();
        prop_assert_eq!(&out.complement_graph, &complement(&g));
        let cover = clique_cert_to_cover(&g, &clique).unwrap();
        prop_assert_eq!(cover.len(), out.target_cover_size);
        prop_assert!(is_vertex_cover(&out.complement_graph, &cover).unwrap());
        prop_assert_eq!(exact_min_vc(&out.complement_graph).unwrap().len(), out.target_cover_size);
    }
}

#[test]
fn certificates_round_trip_on_all_graphs_up_to_five() {
    for n in 1..=5usize {
        let pairs = n * (n - 1) / 2;
        for bits in 0u32..1 << pairs {
            let flags: Vec<bool> = (0..pairs).map(|i| bits >> i & 1 == 1).collect();
            let g = graph_from_bits(n, &flags);
            let gc = complement(&g);
            for mask in 0u32..1 << n {
                let s = subset(mask);
                if is_clique(&g, &s).unwrap() {
                    let cover = clique_cert_to_cover(&g, &s).unwrap();
                    assert!(is_vertex_cover(&gc, &cover).unwrap());
                    assert_eq!(cover_cert_to_clique(&g, &cover).unwrap(), s);
                } else {
                    assert!(clique_cert_to_cover(&g, &s).is_err());
                }
                if is_vertex_cover(&gc, &s).unwrap() {
                    let clique = cover_cert_to_clique(&g, &s).unwrap();
                    assert!(is_clique(&g, &clique).unwrap());
                    assert_eq!(clique_cert_to_cover(&g, &clique).unwrap(), s);
                }
            }
        }
    }
}
