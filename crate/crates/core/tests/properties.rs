use std::path::Path;

use mt_submod::graph::{parse_graph_str, GraphFormat};
use mt_submod::prelude::*;
use mt_submod::stats::{compare, kruskal_wallis};
use proptest::prelude::*;

fn objective_vector(k: usize) -> impl Strategy<Value = ObjectiveVector> {
    (-1i32..6, prop::collection::vec(0u64..5, k))
        .prop_map(|(p, costs)| ObjectiveVector::new(p as f64, costs))
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..25).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..60)
            .prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
    })
}

proptest! {
    #[test]
    fn dominance_is_a_partial_order(
        u in objective_vector(3),
        v in objective_vector(3),
        w in objective_vector(3),
    ) {
        let weak = |a: &ObjectiveVector, b: &ObjectiveVector| dominance(a, b).unwrap() != Dominance::None;
        prop_assert!(weak(&u, &u));
        if weak(&u, &v) && weak(&v, &u) {
            prop_assert_eq!(&u, &v);
        }
        if weak(&u, &v) && weak(&v, &w) {
            prop_assert!(weak(&u, &w));
        }
        if dominance(&u, &v).unwrap() == Dominance::StrictlyDominates {
            prop_assert_eq!(dominance(&v, &u).unwrap(), Dominance::None);
        }
    }

    #[test]
    fn insertion_keeps_archive_nondominated(
        points in prop::collection::vec((0u64..256, objective_vector(2)), 1..60)
    ) {
        let mut p = Population::new();
        for (bits, fit) in points {
            let x = BitString::from_mask(8, bits);
            let inserted = p.add(x, fit.clone());
            p.check_invariants().unwrap();
            // Accepted means present; rejected means strictly dominated.
            if inserted.accepted() {
                prop_assert!(p.iter().any(|m| m.fitness == fit));
            } else {
                prop_assert!(p.is_strictly_dominated(&fit));
            }
        }
    }

    #[test]
    fn archive_respects_population_bound(
        seed in any::<u64>(),
        n in 3usize..20,
        params in prop::collection::vec((1u64..4, 0u64..30), 1..4),
    ) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let g = Graph::gnp(n, 0.3, &mut rng);
        let f = CoverageObjective::from_graph(&g);
        let cs: Vec<Constraint> = params
            .iter()
            .map(|&(a, b)| Constraint::uniform(n, a, b).unwrap())
            .collect();
        let u = population_bound(&cs, n).unwrap();
        let ps = ProblemSet::multitask(&f, cs).unwrap();
        let checkpoints: Vec<u64> = (1..=300).collect();
        let cfg = RunConfig::new(300, seed).with_checkpoints(checkpoints);
        let (archive, trace) = gsemo::run(&ps, &cfg).unwrap();
        prop_assert!(trace.records.iter().all(|r| r.archive_size <= u));
        prop_assert!(trace.peak_archive_size <= u);
        archive.check_invariants().unwrap();
    }

    #[test]
    fn kruskal_wallis_is_rank_based(
        a in prop::collection::vec(0i32..20, 2..25),
        b in prop::collection::vec(0i32..20, 2..25),
    ) {
        let af: Vec<f64> = a.iter().map(|&v| v as f64).collect();
        let bf: Vec<f64> = b.iter().map(|&v| v as f64).collect();
        // Strictly increasing transform keeps every rank.
        let t = |xs: &[f64]| xs.iter().map(|v| (v / 3.0).exp() + 7.0).collect::<Vec<_>>();
        let base = kruskal_wallis(&af, &bf).unwrap();
        let moved = kruskal_wallis(&t(&af), &t(&bf)).unwrap();
        prop_assert!((base.h - moved.h).abs() <= 1e-9 * base.h.max(1.0));
        prop_assert!((base.p - moved.p).abs() <= 1e-9);
        prop_assert!((0.0..=1.0).contains(&base.p));
        prop_assert!(base.h >= 0.0);

        let forward = compare(&af, &bf).unwrap();
        let swapped = compare(&bf, &af).unwrap();
        prop_assert_eq!(swapped.verdict, forward.verdict.mirrored());
        prop_assert!((forward.h - swapped.h).abs() <= 1e-9 * forward.h.max(1.0));
    }

    #[test]
    fn edge_list_roundtrip_is_idempotent(g in graph_strategy()) {
        let mut text = Vec::new();
        g.write_edge_list(&mut text).unwrap();
        let text = String::from_utf8(text).unwrap();
        let back = parse_graph_str(&text, GraphFormat::EdgeList, Path::new("roundtrip")).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        let mut again = Vec::new();
        back.write_edge_list(&mut again).unwrap();
        prop_assert_eq!(again, text.into_bytes());
    }

    #[test]
    fn matrix_market_roundtrip_preserves_graph(g in graph_strategy()) {
        let mut text = Vec::new();
        g.write_matrix_market(&mut text).unwrap();
        let text = String::from_utf8(text).unwrap();
        let back = parse_graph_str(&text, GraphFormat::MatrixMarket, Path::new("roundtrip")).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}
