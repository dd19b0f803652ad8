mod common;

use oddchrom::coloring::{forbidden_colors_at, verify};
use oddchrom::generators::subdivide;
use oddchrom::io::{encode_graph6, parse_graph6};
use oddchrom::solver::{
    brute_force_odd_chromatic, chromatic_number, find_odd_coloring, odd_chromatic_number, Bound, SolveOptions,
    SolveStatus,
};
use oddchrom::{Coloring, Graph};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn exact(g: &Graph) -> Option<usize> {
    match odd_chromatic_number(g, g.order().max(1), &SolveOptions::default()).value {
        Bound::Exact(k) => Some(k),
        _ => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn search_matches_brute_force(g in graph_strategy(6)) {
        let oracle = brute_force_odd_chromatic(&g, g.order()).unwrap();
        prop_assert_eq!(exact(&g), oracle);
    }

    #[test]
    fn witnesses_verify_and_palettes_are_monotone(g in graph_strategy(8)) {
        let r = odd_chromatic_number(&g, g.order(), &SolveOptions::default());
        let Bound::Exact(k) = r.value else { panic!("n colors always suffice") };
        prop_assert!(verify(&g, r.witness.as_ref().unwrap()));
        let above = find_odd_coloring(&g, k + 1, &SolveOptions::default());
        prop_assert_eq!(above.status, SolveStatus::Found);
        let chi = chromatic_number(&g, g.order(), &SolveOptions::default());
        let Bound::Exact(chi) = chi.value else { panic!() };
        prop_assert!(chi <= k);
    }

    #[test]
    fn graph6_roundtrip(g in graph_strategy(12)) {
        prop_assert_eq!(parse_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn surgery_keeps_graphs_simple(g in graph_strategy(8), a in 0usize..8, b in 0usize..8) {
        let (a, b) = (a % g.order(), b % g.order());
        let (d, _) = g.delete_vertices(&[a]).unwrap();
        prop_assert!(d.is_well_formed());
        if a != b && !g.has_edge(a, b) {
            let (h, map) = g.identify_vertices(a, b).unwrap();
            prop_assert!(h.is_well_formed());
            prop_assert_eq!(h.order(), g.order() - 1);
            prop_assert_eq!(map.get(a), map.get(b));
        }
        if g.has_edge(a, b) {
            let (h, _) = g.contract_edge(a, b).unwrap();
            prop_assert!(h.is_well_formed());
            let degrees: usize = h.degrees().iter().sum();
            prop_assert_eq!(degrees, 2 * h.size());
        }
    }

    #[test]
    fn subdivision_shape(g in graph_strategy(8)) {
        let s = subdivide(&g);
        prop_assert_eq!(s.order(), g.order() + g.size());
        prop_assert_eq!(s.size(), 2 * g.size());
        prop_assert!(s.is_bipartite());
        if let Some(girth) = s.girth() {
            prop_assert!(girth >= 6);
        }
    }

    #[test]
    fn blocks_partition_edges(g in graph_strategy(8)) {
        let b = g.blocks();
        let mut seen = std::collections::BTreeSet::new();
        for blk in &b.blocks {
            for &e in &blk.edges {
                prop_assert!(seen.insert(e));
            }
        }
        prop_assert_eq!(seen.len(), g.size());
        for v in 0..g.order() {
            let count = b.blocks.iter().filter(|blk| blk.vertices.contains(&v)).count();
            prop_assert_eq!(count >= 2, b.cut_vertices.contains(&v));
        }
    }

    #[test]
    fn forbidden_set_matches_trial(g in graph_strategy(7), seed in any::<u64>()) {
        // color G minus vertex 0 with some odd coloring, then compare forbidden colors
        // at 0 with trying every color
        prop_assume!(g.degree(0) > 0);
        let k = 9;
        let r = find_odd_coloring(&g, k, &SolveOptions::default());
        let mut c: Coloring = r.witness.unwrap();
        let shift = (seed % 9) as usize;
        let permuted: Vec<usize> = (0..g.order()).map(|v| (c.get(v).unwrap() - 1 + shift) % k + 1).collect();
        c = Coloring::from_colors(k, permuted).unwrap();
        let forbidden = forbidden_colors_at(&g, &c, 0).unwrap();
        for col in 1..=k {
            let mut t = c.clone();
            t.set(0, col).unwrap();
            let proper_at_0 = g.neighbors(0).iter().all(|&u| t.get(u) != Some(col));
            let neighbours_odd = g.neighbors(0).iter().all(|&u| {
                oddchrom::coloring::odd_colors(&g, &t, u).map(|s| !s.is_empty()).unwrap()
            });
            prop_assert_eq!(forbidden.contains(&col), !(proper_at_0 && neighbours_odd));
        }
    }
}

#[test]
fn oracle_agrees_on_atlas_corpus() {
    for g in common::graph6("connected_upto7.g6") {
        let oracle = brute_force_odd_chromatic(&g, g.order()).unwrap();
        assert_eq!(exact(&g), oracle, "{}", encode_graph6(&g));
    }
}
