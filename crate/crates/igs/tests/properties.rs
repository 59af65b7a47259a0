//! Property tests: metric axioms on random graphs, serialisation round
//! trips, structural invariants of generated levels, and the statistical
//! law for random arc counts.

use proptest::prelude::*;

use igs::graph::{Arc, ColoredDigraph, GraphFile};
use igs::matrix::MatF64;
use igs::rng::keyed_u64;
use igs::{fixtures, system};

/// Deterministic random connected graph: a random tree plus extra arcs,
/// with duplicate unordered pairs skipped.
fn build_graph(n: u32, extra: u32, colors: u32, seed: u64) -> ColoredDigraph {
    let mut arcs = Vec::new();
    let mut pairs = std::collections::HashSet::new();
    for v in 1..n {
        let parent = (keyed_u64(seed, 1, v as u64) % v as u64) as u32;
        let color = (keyed_u64(seed, 2, v as u64) % colors as u64) as u32 + 1;
        arcs.push(Arc { tail: parent, head: v, color });
        pairs.insert((parent.min(v), parent.max(v)));
    }
    for i in 0..extra {
        let u = (keyed_u64(seed, 3, i as u64) % n as u64) as u32;
        let v = (keyed_u64(seed, 4, i as u64) % n as u64) as u32;
        if u == v || !pairs.insert((u.min(v), u.max(v))) {
            continue;
        }
        let color = (keyed_u64(seed, 5, i as u64) % colors as u64) as u32 + 1;
        arcs.push(Arc { tail: u, head: v, color });
    }
    ColoredDigraph::from_arcs(colors, arcs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graphs_validate(n in 2u32..40, extra in 0u32..20, seed in any::<u64>()) {
        let g = build_graph(n, extra, 3, seed);
        prop_assert!(g.validate().is_ok());
    }

    #[test]
    fn distance_is_symmetric_and_triangular(
        n in 3u32..40,
        extra in 0u32..20,
        seed in any::<u64>(),
        picks in any::<u64>(),
    ) {
        let g = build_graph(n, extra, 2, seed);
        let u = (keyed_u64(picks, 0, 0) % n as u64) as u32;
        let v = (keyed_u64(picks, 0, 1) % n as u64) as u32;
        let w = (keyed_u64(picks, 0, 2) % n as u64) as u32;
        let duv = g.distance(u, v).unwrap();
        let dvu = g.distance(v, u).unwrap();
        prop_assert_eq!(duv, dvu);
        let duw = g.distance(u, w).unwrap();
        let dvw = g.distance(v, w).unwrap();
        prop_assert!(duw <= duv + dvw, "triangle: d({u},{w})={duw} > {duv}+{dvw}");
        prop_assert_eq!(g.distance(u, u).unwrap(), 0);
    }

    #[test]
    fn chi_norm_counts_arcs(n in 2u32..40, extra in 0u32..20, seed in any::<u64>()) {
        let g = build_graph(n, extra, 3, seed);
        prop_assert_eq!(g.chi().norm1(), g.arc_count() as u64);
    }

    #[test]
    fn diameter_dominates_sampled_eccentricities(
        n in 2u32..40,
        extra in 0u32..20,
        seed in any::<u64>(),
    ) {
        let g = build_graph(n, extra, 2, seed);
        let diam = g.diameter().value;
        let adj = g.adjacency();
        let mut attained = false;
        for s in 0..n.min(20) {
            let ecc = adj.eccentricity(s);
            prop_assert!(ecc <= diam);
            attained |= ecc == diam;
        }
        if n <= 20 {
            prop_assert!(attained, "diameter must be attained by some source");
        }
    }

    #[test]
    fn graph_file_round_trip(n in 2u32..30, extra in 0u32..15, seed in any::<u64>()) {
        let g = build_graph(n, extra, 3, seed);
        let file = g.to_file(&std::collections::BTreeMap::new());
        let json = serde_json::to_string(&file).unwrap();
        let back: GraphFile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_graph(), g);
    }

    #[test]
    fn generated_levels_always_validate(seed in any::<u64>(), n in 0u32..4) {
        let spec = fixtures::random_example();
        let trace = system::generate(&spec, n, seed, system::DEFAULT_MAX_ARCS).unwrap();
        for level in &trace.levels {
            prop_assert!(level.validate().is_ok());
        }
        // endpoints persist and are never internal rule nodes
        prop_assert_eq!(trace.a_node, 0);
        prop_assert_eq!(trace.b_node, 1);
        let last = trace.last();
        prop_assert!(trace.a_node < last.node_count());
        prop_assert!(trace.b_node < last.node_count());
    }

    #[test]
    fn generation_is_reproducible(seed in any::<u64>()) {
        let spec = fixtures::random_example();
        let a = system::generate(&spec, 2, seed, system::DEFAULT_MAX_ARCS).unwrap();
        let b = system::generate(&spec, 2, seed, system::DEFAULT_MAX_ARCS).unwrap();
        let sa = system::serialize_graph(a.last(), a.a_node, a.b_node);
        let sb = system::serialize_graph(b.last(), b.a_node, b.b_node);
        prop_assert_eq!(sa, sb);
        prop_assert_eq!(a.choice_log, b.choice_log);
    }
}

/// The sweep-based diameter search (the path used beyond the all-pairs
/// threshold) is exact on real substitution graphs.
#[test]
fn sweep_diameter_matches_all_pairs_on_generated_levels() {
    let det = fixtures::deterministic_example();
    let trace = system::generate(&det, 4, 0, system::DEFAULT_MAX_ARCS).unwrap();
    for level in &trace.levels[2..] {
        let exact = level.diameter();
        let sweep = level.diameter_via_sweeps(10_000);
        assert!(exact.exact && sweep.exact);
        assert_eq!(sweep.value, exact.value);
    }
    let rnd = fixtures::random_example();
    for seed in 0..4u64 {
        let trace = system::generate(&rnd, 4, seed, system::DEFAULT_MAX_ARCS).unwrap();
        let g = trace.last();
        let exact = g.diameter();
        let sweep = g.diameter_via_sweeps(10_000);
        assert!(sweep.exact);
        assert_eq!(sweep.value, exact.value, "seed {seed}");
    }
}

/// Sample mean of the level-3 arc-count vector against the third power of
/// the probability-weighted mean matrix, within five standard errors of
/// the mean per component.
#[test]
fn random_arc_counts_follow_the_mean_matrix() {
    let spec = fixtures::random_example();
    let seeds = 200u64;
    let mut sums = [0.0f64; 2];
    let mut sq = [0.0f64; 2];
    for seed in 0..seeds {
        let trace = system::generate(&spec, 3, seed, system::DEFAULT_MAX_ARCS).unwrap();
        let chi = trace.last().chi();
        for (j, &c) in chi.as_slice().iter().enumerate() {
            sums[j] += c as f64;
            sq[j] += (c as f64) * (c as f64);
        }
    }
    let set = igs::lyapunov::build_random_matrix_set(&spec);
    let mean_matrix: MatF64 = set.mean_matrix();
    let cube = mean_matrix.mul(&mean_matrix).mul(&mean_matrix);
    // chi(level 0) = (1, 0): expectation is the first row of the cube
    let expect = [cube.get(0, 0), cube.get(0, 1)];
    for j in 0..2 {
        let mean = sums[j] / seeds as f64;
        let var = sq[j] / seeds as f64 - mean * mean;
        let stderr = (var / seeds as f64).sqrt();
        assert!(
            (mean - expect[j]).abs() <= 5.0 * stderr,
            "component {j}: mean {mean} vs expected {} (stderr {stderr})",
            expect[j]
        );
    }
}

/// The distance between the persistent endpoints equals the exhaustive
/// min-product oracle on the deterministic example, level by level.
#[test]
fn distances_match_min_product_oracle() {
    let spec = fixtures::deterministic_example();
    let trace = system::generate(&spec, 3, 0, system::DEFAULT_MAX_ARCS).unwrap();
    let series = system::ab_distance_series(&trace);
    let family = igs::spectral::build_path_matrix_family(&spec).unwrap();
    let x0 = spec.initial.chi();
    for (n, &d) in series.iter().enumerate() {
        let oracle = igs::spectral::min_product_norm(&family, &x0, n as u32).unwrap();
        assert_eq!(oracle, d as u64, "level {n}");
    }
}

/// Simple-path enumeration against an independent subset-DP path counter
/// on small graphs.
#[test]
fn path_enumeration_matches_subset_dp() {
    // count simple paths a->b via DP over (visited mask, endpoint)
    fn count_paths(g: &ColoredDigraph, a: u32, b: u32) -> u64 {
        let n = g.node_count() as usize;
        let mut adj = vec![vec![]; n];
        for arc in g.arcs() {
            adj[arc.tail as usize].push(arc.head as usize);
            adj[arc.head as usize].push(arc.tail as usize);
        }
        let mut memo = std::collections::HashMap::new();
        fn rec(
            mask: u32,
            at: usize,
            b: usize,
            adj: &[Vec<usize>],
            memo: &mut std::collections::HashMap<(u32, usize), u64>,
        ) -> u64 {
            if at == b {
                return 1;
            }
            if let Some(&v) = memo.get(&(mask, at)) {
                return v;
            }
            let mut total = 0;
            for &to in &adj[at] {
                if mask & (1 << to) == 0 {
                    total += rec(mask | (1 << to), to, b, adj, memo);
                }
            }
            memo.insert((mask, at), total);
            total
        }
        rec(1 << a, a as usize, b as usize, &adj, &mut memo)
    }

    let specs = [fixtures::deterministic_example(), fixtures::random_example()];
    for spec in &specs {
        for variants in &spec.rules {
            for variant in variants {
                let rule = &variant.rule;
                let entry = igs::spectral::enumerate_ab_paths(rule, 10_000).unwrap();
                let expect = count_paths(&rule.graph, rule.node_a, rule.node_b);
                assert_eq!(entry.path_count() as u64, expect);
                // every enumerated chi describes a path of >= 2 arcs
                for chi in &entry.path_chis {
                    assert!(chi.norm1() >= 2);
                }
            }
        }
    }
}

/// Published path counts of the random example: |P_11|, |P_12|, |P_21|,
/// |P_22| = 2, 1, 3, 2, with the published chi sets.
#[test]
fn random_example_path_counts() {
    use igs::graph::ChiVector;
    let spec = fixtures::random_example();
    let entries: Vec<_> = spec
        .rules
        .iter()
        .flatten()
        .map(|v| igs::spectral::enumerate_ab_paths(&v.rule, 1000).unwrap())
        .collect();
    assert_eq!(entries.iter().map(|e| e.path_count()).collect::<Vec<_>>(), vec![2, 1, 3, 2]);
    assert_eq!(entries[0].chi_set, vec![ChiVector(vec![1, 2]), ChiVector(vec![3, 1])]);
    assert_eq!(entries[1].chi_set, vec![ChiVector(vec![0, 3])]);
    assert_eq!(entries[2].chi_set, vec![ChiVector(vec![1, 1]), ChiVector(vec![2, 0])]);
    assert_eq!(entries[3].chi_set, vec![ChiVector(vec![1, 1]), ChiVector(vec![1, 2])]);
}
