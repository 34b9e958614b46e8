use hfree::catalog::{in_monotone_family, make, MonotoneFamily};
use hfree::classifier::{classify_cw, classify_gi, equivalence_closure};
use hfree::iso::{are_isomorphic, canonical_form, is_isomorphic, is_isomorphism};
use hfree::reductions::{reduce_diamond_2p3, reduce_diamond_p6, Role};
use hfree::subiso::{contains_induced, find_induced};
use hfree::Graph;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_with_subset(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), subsequence((0..n).collect::<Vec<_>>(), 0..=n))
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subgraph_complementation_is_an_involution((g, s) in graph_with_subset(9)) {
        let once = g.subgraph_complementation(&s).unwrap();
        prop_assert_eq!(once.subgraph_complementation(&s).unwrap(), g);
    }

    #[test]
    fn complement_of_union_restricts((g, h) in (graph(6), graph(6))) {
        let u = g.disjoint_union(&h).complement();
        let part = (0..g.order()).collect::<Vec<_>>();
        prop_assert_eq!(u.induced(&part).unwrap(), g.complement());
    }

    #[test]
    fn union_components_are_shifted((g, h) in (graph(6), graph(6))) {
        let mut expected = g.components().into_iter().map(|c| c.vertices).collect::<Vec<_>>();
        expected.extend(h.components().into_iter().map(|c| c.vertices.iter().map(|v| v + g.order()).collect()));
        expected.sort();
        let mut actual = g.disjoint_union(&h).components().into_iter().map(|c| c.vertices).collect::<Vec<_>>();
        actual.sort();
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn multipartite_iff_complement_is_cliques(g in graph(8)) {
        let co = g.complement();
        let cliques = co.components().iter().all(|c| co.is_clique(&c.vertices));
        prop_assert_eq!(g.is_complete_multipartite(), cliques);
    }

    #[test]
    fn graph6_and_edge_lists_round_trip(g in graph(12)) {
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn relabelled_graphs_are_isomorphic((g, perm) in graph_with_perm(10)) {
        let h = g.permute(&perm);
        let f = are_isomorphic(&g, &h);
        prop_assert!(f.as_ref().is_some_and(|f| is_isomorphism(&g, &h, f)));
        prop_assert_eq!(canonical_form(&g).unwrap().certificate, canonical_form(&h).unwrap().certificate);
    }

    #[test]
    fn certificates_detect_self_complementarity(g in graph(7)) {
        let same = canonical_form(&g).unwrap().certificate == canonical_form(&g.complement()).unwrap().certificate;
        prop_assert_eq!(same, is_isomorphic(&g, &g.complement()));
    }

    #[test]
    fn containment_transports_to_complements((g, h) in (graph(7), graph(4))) {
        prop_assert_eq!(contains_induced(&g, &h), contains_induced(&g.complement(), &h.complement()));
        if let Some(e) = find_induced(&g, &h) {
            prop_assert!(e.is_valid(&g, &h));
        }
    }

    #[test]
    fn subdivision_vertices_have_the_right_neighbours(g in graph(7)) {
        let q = reduce_diamond_2p3(&g);
        for b in q.role_set(Role::B) {
            let nb = q.graph.neighbors(b).collect::<Vec<_>>();
            prop_assert_eq!(nb.len(), 2);
            prop_assert!(!q.graph.has_edge(nb[0], nb[1]));
        }
        let q = reduce_diamond_p6(&g);
        for b in q.role_set(Role::B) {
            let nb = q.graph.neighbors(b).collect::<Vec<_>>();
            prop_assert_eq!(nb.len(), 2);
            prop_assert!(q.graph.has_edge(nb[0], nb[1]));
        }
    }

    #[test]
    fn family_membership_matches_direct_search(g in graph(6)) {
        for family in MonotoneFamily::ALL {
            let direct = (1..=g.order()).any(|t| family.contains_at(&g, t));
            prop_assert_eq!(in_monotone_family(&g, family.identifier()).unwrap(), direct);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn classification_is_invariant_over_the_closure((a, b) in (graph(6), graph(6))) {
        let gi = classify_gi(&a, &b).unwrap().status;
        let cw = classify_cw(&a, &b).unwrap().status;
        for m in equivalence_closure(&a, &b).members {
            prop_assert_eq!(classify_gi(&m.h1, &m.h2).unwrap().status, gi);
            prop_assert_eq!(classify_gi(&m.h2, &m.h1).unwrap().status, gi);
            prop_assert_eq!(classify_cw(&m.h1, &m.h2).unwrap().status, cw);
        }
    }
}

#[test]
fn catalog_complement_pairs() {
    assert!(is_isomorphic(&make("S_{1,1,3}").unwrap(), &make("K_{1,3}^{++}").unwrap()));
    for (a, b) in [("diamond", "2P1+P2"), ("gem", "P1+P4"), ("paw", "P1+P3"), ("crossed-house", "2P1+P3")] {
        assert!(is_isomorphic(&make(a).unwrap().complement(), &make(b).unwrap()), "{a}");
    }
}
