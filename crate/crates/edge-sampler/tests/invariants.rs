//! Property tests for the oracle layer and the deterministic primitives.

use proptest::prelude::*;

use edge_sampler::elementary::{enumerate_edges, extract_edge};
use edge_sampler::graph::{generate, GraphFamily, GraphInstance};
use edge_sampler::oracle::{OracleSession, VertexSet};

/// A random graph as (n, edge list) with n ≤ 24.
fn arb_graph() -> impl Strategy<Value = GraphInstance> {
    (2usize..24).prop_flat_map(|n| {
        let max_m = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec((0..n as u32, 0..n as u32), 0..=max_m))
    })
    .prop_map(|(n, pairs)| {
        let mut edges: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        GraphInstance::from_edges(n, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn is_oracle_is_monotone_under_subsets(
        g in arb_graph(),
        bits in proptest::collection::vec(any::<bool>(), 24),
        keep in proptest::collection::vec(any::<bool>(), 24),
    ) {
        let full: Vec<u32> = (0..g.n() as u32).filter(|&v| bits[v as usize]).collect();
        let sub: Vec<u32> = full.iter().copied().filter(|&v| keep[v as usize]).collect();
        let mut s = OracleSession::new(&g, 0);
        let full_free = s.query_is(&VertexSet::from_ids(full));
        let sub_free = s.query_is(&VertexSet::from_ids(sub));
        // an edge-free set stays edge-free after removing vertices
        prop_assert!(!full_free || sub_free);
    }

    #[test]
    fn extraction_is_correct_and_query_bounded(
        g in arb_graph(),
        bits in proptest::collection::vec(any::<bool>(), 24),
        seed in any::<u64>(),
    ) {
        let ids: Vec<u32> = (0..g.n() as u32).filter(|&v| bits[v as usize]).collect();
        let set = VertexSet::from_ids(ids);
        let mut s = OracleSession::new(&g, seed);
        let has_edge = !s.query_is(&set);
        let before = s.counters().is;
        match extract_edge(&mut s, &set) {
            Some(e) => {
                prop_assert!(has_edge);
                prop_assert!(g.has_edge(e.u, e.v));
                prop_assert!(set.contains(e.u) && set.contains(e.v));
            }
            None => prop_assert!(!has_edge),
        }
        let used = s.counters().is - before;
        let bound = if set.len() <= 1 {
            0
        } else {
            2 * (set.len() as f64).log2().ceil() as u64 + 5
        };
        prop_assert!(used <= bound, "{used} queries on |S| = {}", set.len());
    }

    #[test]
    fn enumeration_recovers_every_edge(g in arb_graph(), seed in any::<u64>()) {
        let mut s = OracleSession::new(&g, seed);
        let mut found = enumerate_edges(&mut s);
        found.sort_unstable();
        prop_assert_eq!(found.as_slice(), g.edges());
    }

    #[test]
    fn relabeling_preserves_structure(g in arb_graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<u32> = (0..g.n() as u32).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm).unwrap();
        h.check_invariants();
        prop_assert_eq!(h.m(), g.m());
        for e in g.edges() {
            prop_assert!(h.has_edge(perm[e.u as usize], perm[e.v as usize]));
        }
        let mut dg: Vec<usize> = (0..g.n() as u32).map(|v| g.degree(v)).collect();
        let mut dh: Vec<usize> = (0..g.n() as u32).map(|v| h.degree(v)).collect();
        dg.sort_unstable();
        dh.sort_unstable();
        prop_assert_eq!(dg, dh);
    }

    #[test]
    fn generated_families_satisfy_invariants(
        family in prop_oneof![
            Just(GraphFamily::Gnm),
            Just(GraphFamily::Clique),
            Just(GraphFamily::Star),
            Just(GraphFamily::Path),
            Just(GraphFamily::Biclique),
            Just(GraphFamily::Lollipop),
            Just(GraphFamily::CliqueStar),
        ],
        a in 2usize..20,
        b in 1usize..20,
        seed in any::<u64>(),
    ) {
        let params: Vec<usize> = match family {
            GraphFamily::Gnm => vec![a + b, (a * b / 2).min((a + b) * (a + b - 1) / 2)],
            GraphFamily::Clique | GraphFamily::Path => vec![a],
            _ => vec![a, b],
        };
        let g = generate(family, &params, seed).unwrap();
        g.check_invariants();
        prop_assert_eq!(g.edges().len(), g.m());
    }

    #[test]
    fn subset_draw_respects_exclusions(
        g in arb_graph(),
        excl in proptest::collection::vec(0u32..24, 0..4),
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let excl: Vec<u32> = excl.into_iter().filter(|&v| (v as usize) < g.n()).collect();
        let mut s = OracleSession::new(&g, seed);
        let set = s.draw_bernoulli_subset(&excl, p);
        for &v in &excl {
            prop_assert!(!set.contains(v));
        }
        for v in set.iter() {
            prop_assert!((v as usize) < g.n());
        }
        prop_assert_eq!(s.counters().total(), 0);
    }
}
