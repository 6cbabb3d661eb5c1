mod common;

use std::sync::Mutex;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roadmap_feasibility::generators::{build_instance, PriorMode};
use roadmap_feasibility::idpc::{IdpcRun, Step};
use roadmap_feasibility::oracle::{EdgeOracle, TableOracle};
use roadmap_feasibility::roadmap::{Configuration, EdgeId, EdgeStatus, Roadmap};
use roadmap_feasibility::{Algorithm, Result};

/// Wraps an oracle and counts calls per edge.
struct Counting<'a> {
    inner: &'a TableOracle,
    calls: Mutex<Vec<usize>>,
}

impl<'a> Counting<'a> {
    fn new(inner: &'a TableOracle, n_edges: usize) -> Self {
        Counting {
            inner,
            calls: Mutex::new(vec![0; n_edges]),
        }
    }
}

impl EdgeOracle for Counting<'_> {
    fn evaluate(&self, roadmap: &Roadmap, edge: EdgeId) -> Result<EdgeStatus> {
        self.calls.lock().unwrap()[edge] += 1;
        self.inner.evaluate(roadmap, edge)
    }
}

/// A random roadmap with a random truth consistent with certain priors.
fn random_problem(seed: u64) -> (Roadmap, Vec<EdgeStatus>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = small_graph(&mut rng, 14, true);
    let mut r = Roadmap::new(2);
    for i in 0..g.n {
        r.add_vertex(Configuration::new(vec![i as f64, (i * i) as f64]).unwrap()).unwrap();
    }
    let mut truth = Vec::new();
    for (&(u, v), &p) in g.edges.iter().zip(&g.probs) {
        r.add_edge(u, v, p).unwrap();
        let free = match p {
            0.0 => false,
            1.0 => true,
            _ => rng.random_bool(p),
        };
        truth.push(if free { EdgeStatus::Free } else { EdgeStatus::Collision });
    }
    r.set_query(0, g.n - 1).unwrap();
    (r, truth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_algorithm_is_complete(seed in any::<u64>(), ppi in 1usize..4) {
        let (roadmap, truth) = random_problem(seed);
        let expected = union_find_feasible(&roadmap, &truth);
        let table = TableOracle::from_statuses(&roadmap, &truth).unwrap();
        for alg in Algorithm::ALL {
            let oracle = Counting::new(&table, roadmap.edge_count());
            let mut r = roadmap.clone();
            let v = alg.run(&mut r, &oracle, ppi).unwrap();
            prop_assert_eq!(v.is_feasible(), expected, "{}", alg);
            prop_assert_eq!(certificate_ok(&r, &truth, &v), Ok(()));
            let calls = oracle.calls.into_inner().unwrap();
            prop_assert!(calls.iter().all(|&c| c <= 1), "{} evaluated an edge twice", alg);
            prop_assert_eq!(calls.iter().sum::<usize>(), v.stats.n_evaluations);
            prop_assert!(v.stats.n_evaluations <= roadmap.edge_count());
            prop_assert!(v.stats.n_iterations <= roadmap.edge_count() + 1);
            // edges with certain priors are never evaluated
            for (e, &c) in calls.iter().enumerate() {
                if roadmap.prior(e) == 0.0 || roadmap.prior(e) == 1.0 {
                    prop_assert_eq!(c, 0);
                }
            }
        }
    }

    #[test]
    fn runs_are_deterministic(seed in any::<u64>()) {
        let (roadmap, truth) = random_problem(seed);
        let oracle = TableOracle::from_statuses(&roadmap, &truth).unwrap();
        for alg in Algorithm::ALL {
            let mut a = roadmap.clone();
            let mut b = roadmap.clone();
            let mut va = alg.run(&mut a, &oracle, 2).unwrap();
            let mut vb = alg.run(&mut b, &oracle, 2).unwrap();
            va.stats.wall_time = Default::default();
            vb.stats.wall_time = Default::default();
            prop_assert_eq!(va, vb);
        }
    }

    #[test]
    fn idpc_steps_keep_a_partition(seed in any::<u64>()) {
        let (mut roadmap, truth) = random_problem(seed);
        let feasible = union_find_feasible(&roadmap, &truth);
        let oracle = TableOracle::from_statuses(&roadmap, &truth).unwrap();
        let n_edges = roadmap.edge_count();
        let mut run = IdpcRun::new(&mut roadmap, &oracle, 1).unwrap();
        let mut previous_count = 1;
        loop {
            let step = run.step().unwrap();
            run.subgraphs().check_decomposition(run.roadmap()).unwrap();
            prop_assert!(run.subgraphs().count() >= previous_count);
            previous_count = run.subgraphs().count();
            if feasible {
                prop_assert!(run.abstract_graph().goal_reachable());
            }
            prop_assert_eq!(run.trace().len(), run.stats().n_iterations);
            if let Step::Done(v) = step {
                prop_assert_eq!(v.is_feasible(), feasible);
                prop_assert!(run.step().is_err());
                break;
            }
            prop_assert!(run.stats().n_iterations <= n_edges + 1);
        }
    }
}

#[test]
fn perfect_priors_need_no_evaluations() {
    for scene in ["passage", "clutter"] {
        for blocked in [false, true] {
            let inst = build_instance(&spec(scene, 500, PriorMode::Perfect, blocked, 9)).unwrap();
            for alg in Algorithm::ALL {
                let mut r = inst.roadmap.clone();
                let v = alg.run(&mut r, &inst.oracle(), 1).unwrap();
                assert_eq!(v.stats.n_evaluations, 0, "{alg}");
                assert_eq!(v.is_feasible(), !blocked);
            }
        }
    }
}

#[test]
fn ipc_and_idpc_agree_on_generated_instances() {
    for seed in 0..4 {
        for blocked in [false, true] {
            let inst = build_instance(&spec("zigzag", 1000, noisy(), blocked, seed)).unwrap();
            let mut a = inst.roadmap.clone();
            let mut b = inst.roadmap.clone();
            let va = Algorithm::Ipc.run(&mut a, &inst.oracle(), 1).unwrap();
            let vb = Algorithm::Idpc.run(&mut b, &inst.oracle(), 1).unwrap();
            assert_eq!(va.is_feasible(), vb.is_feasible());
            assert_eq!(va.is_feasible(), union_find_feasible(&inst.roadmap, &inst.truth));
        }
    }
}

#[test]
fn zero_paths_per_iteration_is_rejected() {
    let (mut r, truth) = random_problem(1);
    let oracle = TableOracle::from_statuses(&r, &truth).unwrap();
    assert!(Algorithm::Ipc.run(&mut r.clone(), &oracle, 0).is_err());
    assert!(Algorithm::Idpc.run(&mut r, &oracle, 0).is_err());
}
