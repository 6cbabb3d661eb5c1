mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roadmap_feasibility::roadmap::{capacity_from_prob, weight_from_prob, ExtValue};
use roadmap_feasibility::search::{max_flow_value, most_probable_cut, most_probable_path, Side};
use roadmap_feasibility::Error;

fn graph(seed: u64, max_n: usize, certain: bool) -> SmallGraph {
    small_graph(&mut ChaCha8Rng::seed_from_u64(seed), max_n, certain)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn path_probability_matches_enumeration(seed in any::<u64>()) {
        let g = graph(seed, 9, true);
        let w: Vec<ExtValue> = g.probs.iter().map(|&p| weight_from_prob(p).unwrap()).collect();
        let best = best_path_product(&g, 0, g.n - 1);
        match most_probable_path(g.n, &g.edges, &w, 0, g.n - 1).unwrap() {
            None => prop_assert_eq!(best, 0.0),
            Some(p) => {
                prop_assert!((p.probability() - best).abs() <= 1e-9 * best);
                prop_assert_eq!(p.vertices.first(), Some(&0));
                prop_assert_eq!(p.vertices.last(), Some(&(g.n - 1)));
                let mut seen = p.vertices.clone();
                seen.sort_unstable();
                seen.dedup();
                prop_assert_eq!(seen.len(), p.vertices.len());
            }
        }
    }

    #[test]
    fn cut_capacity_matches_partitions(seed in any::<u64>()) {
        let g = graph(seed, 11, true);
        let caps: Vec<ExtValue> = g.probs.iter().map(|&p| capacity_from_prob(p).unwrap()).collect();
        let opt: Vec<Option<f64>> = caps.iter().map(|c| c.finite()).collect();
        let t = g.n - 1;
        let best = brute_min_cut(g.n, &g.edges, &opt, 0, t);
        match (most_probable_cut(g.n, &g.edges, &caps, &[0], &[t]).unwrap(), best) {
            (None, None) => {}
            (Some(c), Some(b)) => {
                prop_assert!((c.total_capacity - b).abs() <= 1e-9);
                prop_assert_eq!(c.side(0), Side::Source);
                prop_assert_eq!(c.side(t), Side::Sink);
                // the reported edges are exactly those crossing the partition
                for (e, &(u, v)) in g.edges.iter().enumerate() {
                    prop_assert_eq!(c.edges.contains(&e), c.side(u) != c.side(v));
                }
            }
            (got, want) => prop_assert!(false, "cut {:?} vs brute force {:?}", got.map(|c| c.total_capacity), want),
        }
    }

    #[test]
    fn max_flow_equals_min_cut(seed in any::<u64>()) {
        let g = graph(seed, 11, false);
        let caps: Vec<f64> = g.probs.iter().map(|&p| -(1.0 - p).ln()).collect();
        let opt: Vec<Option<f64>> = caps.iter().map(|&c| Some(c)).collect();
        let t = g.n - 1;
        let flow = max_flow_value(g.n, &g.edges, &caps, 0, t).unwrap();
        let reference = edmonds_karp(g.n, &g.edges, &caps, 0, t);
        let cut = brute_min_cut(g.n, &g.edges, &opt, 0, t).unwrap();
        prop_assert!((flow - reference).abs() <= 1e-9, "{} vs {}", flow, reference);
        prop_assert!((flow - cut).abs() <= 1e-9);
    }

    #[test]
    fn terminal_sets_match_merged_terminals(seed in any::<u64>()) {
        // a cut between two vertex sets equals the cut between single
        // vertices after joining each set with infinite edges
        let g = graph(seed, 10, false);
        prop_assume!(g.n >= 4);
        let caps: Vec<ExtValue> = g.probs.iter().map(|&p| capacity_from_prob(p).unwrap()).collect();
        let (sources, sinks) = ([0, 1], [g.n - 2, g.n - 1]);
        let got = most_probable_cut(g.n, &g.edges, &caps, &sources, &sinks).unwrap().unwrap();
        let mut edges = g.edges.clone();
        let mut opt: Vec<Option<f64>> = caps.iter().map(|c| c.finite()).collect();
        edges.push((0, 1));
        opt.push(None);
        edges.push((g.n - 2, g.n - 1));
        opt.push(None);
        let best = brute_min_cut(g.n, &edges, &opt, 0, g.n - 1).unwrap();
        prop_assert!((got.total_capacity - best).abs() <= 1e-9);
    }
}

#[test]
fn certain_edges_are_never_cut_or_walked() {
    // 0 -1.0- 1 -0.0- 2 ; the only route has a certain-collision edge
    let edges = [(0, 1), (1, 2)];
    let w = [weight_from_prob(1.0).unwrap(), weight_from_prob(0.0).unwrap()];
    assert!(most_probable_path(3, &edges, &w, 0, 2).unwrap().is_none());
    let c = [capacity_from_prob(1.0).unwrap(), capacity_from_prob(0.0).unwrap()];
    let cut = most_probable_cut(3, &edges, &c, &[0], &[2]).unwrap().unwrap();
    assert_eq!(cut.edges, vec![1]);
    assert_eq!(cut.total_capacity, 0.0);
    let c = [capacity_from_prob(1.0).unwrap(), capacity_from_prob(1.0).unwrap()];
    assert!(most_probable_cut(3, &edges, &c, &[0], &[2]).unwrap().is_none());
}

#[test]
fn terminal_errors() {
    let edges = [(0, 1)];
    let c = [ExtValue::Finite(1.0)];
    assert!(matches!(most_probable_cut(2, &edges, &c, &[], &[1]), Err(Error::EmptyTerminals)));
    assert!(matches!(
        most_probable_cut(2, &edges, &c, &[0, 1], &[1]),
        Err(Error::OverlappingTerminals(1))
    ));
}
