//! Steiner tree counting against exhaustive enumeration, and the exact
//! betweenness decomposition identities.

use num_traits::Zero;
use steiner_core::catalog::connected_graphs;
use steiner_core::rng::SplitMix64;
use steiner_core::subsets::KSubsets;
use steiner_core::tree::vertex_terms;
use steiner_core::{
    binomial, count_steiner_trees, enumerate_min_steiner_trees, generate_family, geodesic_betweenness,
    k_steiner_betweenness, steiner_wiener_k, total_steiner_betweenness, total_steiner_wiener, BigCount,
    ExactRatio, Family, Graph, Limits, SteinerCounter, TerminalSet,
};

fn gnp(n: usize, seed: u64) -> Graph {
    generate_family(Family::GnpConnected, &[n, 20 + (seed as usize * 13) % 60], Some(seed)).unwrap()
}

fn assert_count_matches_enumeration(g: &Graph, a: &TerminalSet, counter: &SteinerCounter) {
    let counted = counter.count(a).unwrap();
    let trees = enumerate_min_steiner_trees(g, a).unwrap();
    assert_eq!(counted.sigma, BigCount::from(trees.len()), "{g} {a:?}");
    for v in (0..g.n()).filter(|&v| !a.contains(v)) {
        let through = trees.iter().filter(|t| t.iter().any(|&(x, y)| x == v || y == v)).count();
        assert_eq!(counted.through[v], BigCount::from(through), "{g} {a:?} v={v}");
    }
    // internal vertices of every minimum tree: δ(A) - k + 1
    let internal: BigCount = counted.through.iter().sum();
    assert_eq!(internal, BigCount::from(counted.steiner_distance + 1 - a.k()) * &counted.sigma);
    assert!(counted.through.iter().all(|t| *t <= counted.sigma));
}

#[test]
fn counting_matches_enumeration_exhaustively_up_to_six() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let counter = SteinerCounter::new(&g, Limits::default()).unwrap();
            for k in 2..=n {
                for mask in KSubsets::new(n, k) {
                    assert_count_matches_enumeration(&g, &TerminalSet::from_mask(mask, n).unwrap(), &counter);
                }
            }
        }
    }
}

#[test]
fn counting_matches_enumeration_on_random_sets_seven_and_eight() {
    let mut rng = SplitMix64::new(99);
    for n in [7usize, 8] {
        let mut graphs: Vec<Graph> = (0..4).map(|s| gnp(n, s + 100)).collect();
        graphs.push(generate_family(Family::Cycle, &[n], None).unwrap());
        if n == 8 {
            graphs.push(generate_family(Family::Hypercube, &[3], None).unwrap());
        }
        for g in &graphs {
            let counter = SteinerCounter::new(g, Limits::default()).unwrap();
            for _ in 0..200 {
                let mask = loop {
                    let m = rng.next_u64() & ((1 << n) - 1);
                    if m.count_ones() >= 2 {
                        break m;
                    }
                };
                assert_count_matches_enumeration(g, &TerminalSet::from_mask(mask, n).unwrap(), &counter);
            }
        }
    }
}

#[test]
fn k_steiner_identity_has_zero_residual() {
    let l = Limits::default();
    let mut graphs: Vec<Graph> = (4..=6).flat_map(connected_graphs).collect();
    graphs.extend((0..10).map(|s| gnp(7 + s as usize % 3, s)));
    for g in &graphs {
        for k in 2..=g.n() {
            let r = k_steiner_betweenness(g, k, &l).unwrap();
            assert!(r.identity_residual.is_zero(), "{g} k={k}");
            assert!(r.sum.is_integer());
            // the right-hand side is independent of the counting sweep
            let sw = steiner_wiener_k(g, k, &l).unwrap().value;
            assert_eq!(r.steiner_wiener, sw);
            let rhs = ExactRatio::from_count(&sw)
                - ExactRatio::from_count(&(BigCount::from(k - 1) * binomial(g.n() as u64, k as u64)));
            assert_eq!(r.sum, rhs);
        }
    }
}

#[test]
fn total_identity_has_zero_residual() {
    let l = Limits::default();
    let mut graphs: Vec<Graph> = (1..=6).flat_map(connected_graphs).collect();
    graphs.extend((0..6).map(|s| gnp(7, s)));
    for g in &graphs {
        let r = total_steiner_betweenness(g, &l).unwrap();
        assert!(r.identity_residual.is_zero(), "{g}");
        assert_eq!(r.steiner_wiener, total_steiner_wiener(g, &l).unwrap().value);
        // B_S is the sum of B_k over 2 <= k < n
        let mut by_k = vec![ExactRatio::zero(); g.n()];
        for k in 2..g.n() {
            for (acc, b) in by_k.iter_mut().zip(k_steiner_betweenness(g, k, &l).unwrap().per_vertex) {
                *acc += &b;
            }
        }
        assert_eq!(r.per_vertex, by_k);
    }
}

#[test]
fn b2_is_geodesic_betweenness() {
    let l = Limits::default();
    let mut graphs: Vec<Graph> = (2..=6).flat_map(connected_graphs).collect();
    graphs.extend((0..10).map(|s| gnp(8, s)));
    for g in &graphs {
        assert_eq!(k_steiner_betweenness(g, 2, &l).unwrap().per_vertex, geodesic_betweenness(g), "{g}");
    }
}

#[test]
fn trees_have_unique_steiner_trees_and_integral_betweenness() {
    let l = Limits::default();
    for seed in 0..15 {
        let n = 3 + seed as usize % 8;
        let t = generate_family(Family::RandomTree, &[n], Some(seed)).unwrap();
        for k in 2..=n.min(5) {
            for mask in KSubsets::new(n, k) {
                let a = TerminalSet::from_mask(mask, n).unwrap();
                assert_eq!(count_steiner_trees(&t, &a, &l).unwrap().sigma, BigCount::from(1u8));
            }
            let b = k_steiner_betweenness(&t, k, &l).unwrap().per_vertex;
            let terms: Vec<ExactRatio> = vertex_terms(&t, k).unwrap().iter().map(ExactRatio::from_count).collect();
            assert_eq!(b, terms);
        }
    }
}

#[test]
fn complete_graph_counts_are_cayley() {
    let l = Limits::default();
    for n in 3..=6 {
        let kn = generate_family(Family::Complete, &[n], None).unwrap();
        for k in 2..=n {
            for mask in KSubsets::new(n, k) {
                let a = TerminalSet::from_mask(mask, n).unwrap();
                let c = count_steiner_trees(&kn, &a, &l).unwrap();
                assert_eq!(c.sigma, BigCount::from(k).pow(k as u32 - 2));
                assert!(c.through.iter().all(Zero::is_zero));
                assert_eq!(BigCount::from(enumerate_min_steiner_trees(&kn, &a).unwrap().len()), c.sigma);
            }
        }
    }
}
