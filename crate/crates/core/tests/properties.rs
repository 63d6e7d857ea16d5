use petgraph::algo::{connected_components, is_bipartite_undirected};
use petgraph::graph::UnGraph;
use proptest::prelude::*;

use domreconf::domination::{domination_profile, enumerate_dominating_sets, VertexSet};
use domreconf::graph::{
    connected_components as seed_components, disjoint_union, labeled_graph, make_family,
    FamilySpec, SeedGraph,
};
use domreconf::graph6::{encode_graph6, parse_graph6};
use domreconf::reconfig::{build_reconfig, eulerian_report, node_degree, ReconfigGraph};

fn seed(max_n: usize) -> impl Strategy<Value = SeedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << slots)).prop_map(|(n, mask)| labeled_graph(n, mask).unwrap())
    })
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1usize..=26).prop_map(|n| FamilySpec::Path { n }),
        (3usize..=26).prop_map(|n| FamilySpec::Cycle { n }),
        (1usize..=26).prop_map(|n| FamilySpec::Complete { n }),
        (1usize..=13, 1usize..=13).prop_map(|(m, n)| FamilySpec::CompleteBipartite { m, n }),
        (1usize..=25).prop_map(|n| FamilySpec::Star { n }),
        (2usize..=13).prop_map(|h| FamilySpec::Cocktail { n: 2 * h }),
        (2usize..=13).prop_map(|n| FamilySpec::corona(FamilySpec::Path { n })),
    ]
}

fn to_petgraph(r: &ReconfigGraph) -> UnGraph<(), ()> {
    let mut pg = UnGraph::new_undirected();
    let ids: Vec<_> = (0..r.node_count()).map(|_| pg.add_node(())).collect();
    for (a, b) in r.edges() {
        pg.add_edge(ids[a], ids[b], ());
    }
    pg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips_families(spec in family()) {
        let g = make_family(&spec).unwrap();
        let back = parse_graph6(&encode_graph6(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn graph6_round_trips_labeled(g in seed(9)) {
        prop_assert_eq!(parse_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn dominating_set_count_is_odd(g in seed(9)) {
        let p = domination_profile(&g).unwrap();
        prop_assert_eq!(p.total_count % 2, 1);
        prop_assert_eq!(p.counts_by_size.iter().sum::<u64>(), p.total_count);
    }

    #[test]
    fn supersets_of_dominating_sets_dominate(g in seed(8), k in 1usize..=8) {
        let k = k.min(g.n());
        let sets = enumerate_dominating_sets(&g, k).unwrap();
        let all = enumerate_dominating_sets(&g, g.n()).unwrap();
        for s in &sets {
            for v in 0..g.n() {
                let bigger = VertexSet::new(g.n(), s.bits() | 1 << v).unwrap();
                prop_assert!(all.contains(&bigger));
            }
        }
    }

    #[test]
    fn degree_is_removals_plus_additions(g in seed(8), k in 1usize..=8) {
        let k = k.min(g.n());
        let Ok(r) = build_reconfig(&g, k) else { return Ok(()); };
        for (i, s) in r.nodes().iter().enumerate() {
            prop_assert_eq!(node_degree(&g, *s, k).unwrap(), r.degree(i));
        }
    }

    #[test]
    fn full_dominating_graph_is_connected_odd_and_bipartite(g in seed(8)) {
        let r = build_reconfig(&g, g.n()).unwrap();
        let pg = to_petgraph(&r);
        prop_assert_eq!(connected_components(&pg), 1);
        prop_assert!(r.node_count() % 2 == 1);
        if r.node_count() > 0 {
            prop_assert!(is_bipartite_undirected(&pg, petgraph::graph::NodeIndex::new(0)));
        }
        prop_assert!(eulerian_report(&r).is_connected);
    }

    #[test]
    fn reconfig_graphs_grow_with_k(g in seed(8)) {
        let gamma = domination_profile(&g).unwrap().gamma;
        let mut prev: Option<ReconfigGraph> = None;
        for k in gamma..=g.n() {
            let r = build_reconfig(&g, k).unwrap();
            if let Some(p) = &prev {
                for (a, b) in p.edges() {
                    let ia = r.index_of(p.nodes()[a]).unwrap();
                    let ib = r.index_of(p.nodes()[b]).unwrap();
                    prop_assert!(r.has_edge(ia, ib));
                }
                prop_assert!(r.node_count() > p.node_count());
            }
            prev = Some(r);
        }
    }

    #[test]
    fn union_component_counts_add(a in seed(5), b in seed(5)) {
        let u = disjoint_union(&a, &b).unwrap();
        prop_assert_eq!(
            seed_components(&u).len(),
            seed_components(&a).len() + seed_components(&b).len()
        );
        let r = build_reconfig(&u, u.n()).unwrap();
        let ra = build_reconfig(&a, a.n()).unwrap();
        let rb = build_reconfig(&b, b.n()).unwrap();
        prop_assert_eq!(r.node_count(), ra.node_count() * rb.node_count());
        prop_assert_eq!(
            r.edge_count(),
            ra.edge_count() * rb.node_count() + rb.edge_count() * ra.node_count()
        );
    }
}

#[test]
fn labeled_graph_counts() {
    for n in 1..=5usize {
        let total = domreconf::graph::enumerate_labeled_graphs(n, false)
            .unwrap()
            .count();
        assert_eq!(total as u64, 1u64 << (n * (n - 1) / 2));
    }
}
