use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toruscolor::coloring::{reduce_and_color, verify_coloring, ListAssignment, ReductionOutcome};
use toruscolor::discharging::{apply_discharging, initial_charges, expected_total, RuleSet};
use toruscolor::graph::{adjacent_triangles_present, CycleFinder, EmbeddedGraph, Graph, TriangleMode};
use toruscolor::io::generators::{gen_subdivision, gen_torus_grid};
use toruscolor::io::{emit_graph6, emit_rotation, parse_graph6, parse_rotation, CorpusEntry};
use toruscolor::structures::{Case, find_reducible_configuration};

/// Connected random graph: a random spanning tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1));
        let extra = proptest::collection::vec((0..n, 0..n), 0..=2 * n);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, p)| (p.index(i + 1), i + 1))
                .collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                    edges.push(e);
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn shuffled_embedding(g: &Graph, seed: u64) -> EmbeddedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot: Vec<Vec<usize>> = g
        .vertices()
        .map(|v| {
            let mut r = g.neighbors(v).to_vec();
            r.shuffle(&mut rng);
            r
        })
        .collect();
    EmbeddedGraph::from_rotation(rot).unwrap()
}

/// Cycle of length exactly `k` by trying every vertex sequence.
fn naive_has_cycle(g: &Graph, k: usize) -> bool {
    fn extend(g: &Graph, path: &mut Vec<usize>, k: usize) -> bool {
        let last = *path.last().unwrap();
        if path.len() == k {
            return g.has_edge(last, path[0]);
        }
        for &u in g.neighbors(last) {
            if !path.contains(&u) {
                path.push(u);
                if extend(g, path, k) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    k >= 3 && g.vertices().any(|v| extend(g, &mut vec![v], k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_partition_darts(g in connected_graph(12), seed in any::<u64>()) {
        let e = shuffled_embedding(&g, seed);
        let mut seen = std::collections::BTreeSet::new();
        for f in e.faces().faces() {
            for d in &f.darts {
                prop_assert!(seen.insert((d.tail, d.head)));
            }
        }
        prop_assert_eq!(seen.len(), 2 * g.edge_count());
        let chi = e.vertex_count() as i64 - e.edge_count() as i64 + e.face_count() as i64;
        prop_assert_eq!(chi, 2 - 2 * e.genus() as i64);
    }

    #[test]
    fn cycle_finder_matches_naive(g in connected_graph(10), k in 3usize..=8) {
        let finder = CycleFinder::default();
        let found = finder.find_cycle(&g, k);
        prop_assert_eq!(found.is_some(), naive_has_cycle(&g, k));
        if let Some(c) = found {
            prop_assert_eq!(c.len(), k);
            for i in 0..k {
                prop_assert!(g.has_edge(c[i], c[(i + 1) % k]));
            }
        }
    }

    #[test]
    fn face_triangles_imply_cycle_triangles(g in connected_graph(10), seed in any::<u64>()) {
        let e = shuffled_embedding(&g, seed);
        let faces = adjacent_triangles_present(&g, Some(&e), TriangleMode::Faces).unwrap();
        let cycles = adjacent_triangles_present(&g, Some(&e), TriangleMode::Cycles).unwrap();
        prop_assert!(!faces || cycles);
    }

    #[test]
    fn discharging_conserves(g in connected_graph(14), seed in any::<u64>(), case in 1u8..=2) {
        let e = shuffled_embedding(&g, seed);
        let initial = initial_charges(&e);
        prop_assert_eq!(initial.total(), expected_total(&e));
        let (fin, ledger) = apply_discharging(&e, &RuleSet::builtin(Case::from_number(case).unwrap()));
        prop_assert_eq!(fin.total(), initial.total());
        prop_assert_eq!(ledger.replay(&initial), fin);
    }

    #[test]
    fn graph6_round_trip(g in connected_graph(70)) {
        let s = emit_graph6(&g);
        let back = parse_graph6(&s).unwrap();
        prop_assert_eq!(back.normalized(), g.normalized());
        prop_assert_eq!(emit_graph6(&back), s);
    }

    #[test]
    fn rotation_round_trip(g in connected_graph(12), seed in any::<u64>()) {
        let e = shuffled_embedding(&g, seed);
        let text = emit_rotation(&e);
        let back = parse_rotation(&text).unwrap();
        prop_assert_eq!(emit_rotation(&back), text);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn subdivision_preserves_genus_and_kills_short_cycles(g in connected_graph(8), seed in any::<u64>()) {
        let e = shuffled_embedding(&g, seed);
        let entry = CorpusEntry::embedded("g", e.clone(), "random");
        let sub = gen_subdivision(&entry, 2);
        let se = sub.embedding.as_ref().unwrap();
        prop_assert_eq!(se.genus(), e.genus());
        let finder = CycleFinder::default();
        for k in [5, 6, 7] {
            prop_assert!(finder.find_cycle(&sub.graph, k).is_none());
        }
    }

    #[test]
    fn subdivisions_color_from_any_three_lists(g in connected_graph(10), seed in any::<u64>()) {
        let sub = gen_subdivision(&CorpusEntry::abstract_graph("g", &g, "random"), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = ListAssignment::random(sub.graph.vertex_count(), 3, 4, &mut rng);
        prop_assert!(find_reducible_configuration(&sub.graph, None).is_some());
        match reduce_and_color(&sub.graph, &lists).unwrap() {
            ReductionOutcome::Colored { coloring, .. } => {
                prop_assert!(verify_coloring(&sub.graph, &lists, &coloring, 1).is_ok());
            }
            ReductionOutcome::Stuck(s) => prop_assert!(false, "stuck: {:?}", s.remaining),
        }
    }
}

#[test]
fn grids_are_toroidal() {
    for m in 3..=6 {
        for n in 3..=6 {
            for d in [false, true] {
                assert_eq!(gen_torus_grid(m, n, d).unwrap().embedding.unwrap().genus(), 1);
            }
        }
    }
}
