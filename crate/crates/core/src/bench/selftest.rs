//! Brute-force cross-checks of the search engines and algorithms on small
//! random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithm::Algorithm;
use crate::generators::ground_truth_feasible;
use crate::oracle::TableOracle;
use crate::roadmap::{capacity_from_prob, weight_from_prob, Configuration, EdgeStatus, ExtValue, Roadmap, VertexId};
use crate::search::{max_flow_value, most_probable_cut, most_probable_path};

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn all_passed(results: &[SuiteResult]) -> bool {
    results.iter().all(SuiteResult::passed)
}

struct RandomGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    probs: Vec<f64>,
}

/// Edge probabilities are sometimes exactly 0 or 1 so infinite weights
/// and capacities get exercised.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, certain: bool) -> RandomGraph {
    let n = rng.random_range(2..=max_n);
    let density = rng.random_range(0.2..0.8);
    let mut edges = Vec::new();
    let mut probs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
                let p = match rng.random_range(0..10) {
                    0 if certain => 0.0,
                    1 if certain => 1.0,
                    _ => rng.random_range(0.01..0.99),
                };
                probs.push(p);
            }
        }
    }
    RandomGraph { n, edges, probs }
}

fn best_path_product(g: &RandomGraph, s: VertexId, t: VertexId) -> f64 {
    fn dfs(g: &RandomGraph, u: VertexId, t: VertexId, seen: &mut Vec<bool>, prod: f64, best: &mut f64) {
        if u == t {
            *best = best.max(prod);
            return;
        }
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            let w = if a == u { b } else if b == u { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                dfs(g, w, t, seen, prod * g.probs[e], best);
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; g.n];
    seen[s] = true;
    let mut best = 0.0;
    dfs(g, s, t, &mut seen, 1.0, &mut best);
    best
}

/// Minimum capacity over every vertex set holding `s` but not `t`.
fn brute_min_cut(n: usize, edges: &[(VertexId, VertexId)], caps: &[ExtValue], s: VertexId, t: VertexId) -> ExtValue {
    let free: Vec<VertexId> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = ExtValue::Inf;
    for mask in 0u32..(1 << free.len()) {
        let mut inside = vec![false; n];
        inside[s] = true;
        for (i, &v) in free.iter().enumerate() {
            inside[v] = mask & (1 << i) != 0;
        }
        let mut total = 0.0;
        let mut infinite = false;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if inside[u] != inside[v] {
                match caps[e] {
                    ExtValue::Inf => infinite = true,
                    ExtValue::Finite(c) => total += c,
                }
            }
        }
        if !infinite && best.finite().is_none_or(|b| total < b) {
            best = ExtValue::Finite(total);
        }
    }
    best
}

fn path_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let g = random_graph(rng, 10, true);
        let w: Vec<ExtValue> = g.probs.iter().map(|&p| weight_from_prob(p).unwrap()).collect();
        let expected = best_path_product(&g, 0, g.n - 1);
        let got = most_probable_path(g.n, &g.edges, &w, 0, g.n - 1).unwrap();
        let ok = match &got {
            None => expected == 0.0,
            Some(p) => expected > 0.0 && (p.probability() - expected).abs() <= 1e-9 * expected,
        };
        if !ok {
            failures.push(format!("case {case}: path {:?} vs best product {expected}", got.map(|p| p.probability())));
        }
    }
    SuiteResult {
        name: "most probable path vs simple-path enumeration",
        cases,
        failures,
    }
}

fn cut_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let g = random_graph(rng, 12, true);
        let caps: Vec<ExtValue> = g.probs.iter().map(|&p| capacity_from_prob(p).unwrap()).collect();
        let t = g.n - 1;
        let expected = brute_min_cut(g.n, &g.edges, &caps, 0, t);
        let got = most_probable_cut(g.n, &g.edges, &caps, &[0], &[t]).unwrap();
        let ok = match (&got, expected) {
            (None, ExtValue::Inf) => true,
            (Some(c), ExtValue::Finite(b)) => (c.total_capacity - b).abs() <= 1e-9,
            _ => false,
        };
        if !ok {
            failures.push(format!(
                "case {case}: cut {:?} vs brute force {expected:?}",
                got.map(|c| c.total_capacity)
            ));
        }
    }
    SuiteResult {
        name: "most probable cut vs partition enumeration",
        cases,
        failures,
    }
}

fn flow_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let g = random_graph(rng, 12, false);
        let caps: Vec<f64> = g.probs.iter().map(|&p| -(1.0 - p).ln()).collect();
        let ext: Vec<ExtValue> = caps.iter().map(|&c| ExtValue::Finite(c)).collect();
        let t = g.n - 1;
        let flow = max_flow_value(g.n, &g.edges, &caps, 0, t).unwrap();
        let cut = brute_min_cut(g.n, &g.edges, &ext, 0, t).finite().unwrap_or(f64::NAN);
        if (flow - cut).abs() > 1e-9 {
            failures.push(format!("case {case}: max flow {flow} vs min cut {cut}"));
        }
    }
    SuiteResult {
        name: "max flow equals min cut",
        cases,
        failures,
    }
}

fn algorithm_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let g = random_graph(rng, 12, true);
        let mut roadmap = Roadmap::new(2);
        for i in 0..g.n {
            roadmap
                .add_vertex(Configuration::new(vec![i as f64, 0.0]).unwrap())
                .unwrap();
        }
        let mut truth = Vec::new();
        for (&(u, v), &p) in g.edges.iter().zip(&g.probs) {
            roadmap.add_edge(u, v, p).unwrap();
            // certain priors must agree with the truth
            let free = if p == 0.0 || p == 1.0 { p == 1.0 } else { rng.random_bool(p) };
            truth.push(if free { EdgeStatus::Free } else { EdgeStatus::Collision });
        }
        roadmap.set_query(0, g.n - 1).unwrap();
        let expected = ground_truth_feasible(&roadmap, &truth).unwrap();
        let oracle = TableOracle::from_statuses(&roadmap, &truth).unwrap();
        let ppi = rng.random_range(1..=3);
        for alg in Algorithm::ALL {
            let mut r = roadmap.clone();
            let outcome = alg.run(&mut r, &oracle, ppi).and_then(|v| {
                v.validate(&r)?;
                Ok(v)
            });
            match outcome {
                Ok(v) if v.is_feasible() == expected => {}
                Ok(v) => failures.push(format!("case {case}: {alg} said {}", v.label())),
                Err(e) => failures.push(format!("case {case}: {alg} failed: {e}")),
            }
        }
    }
    SuiteResult {
        name: "algorithm verdicts vs union-find",
        cases,
        failures,
    }
}

/// Runs every suite with `cases` random graphs each.
pub fn run_selftest(cases: usize, seed: u64) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        path_suite(&mut rng, cases),
        cut_suite(&mut rng, cases),
        flow_suite(&mut rng, cases),
        algorithm_suite(&mut rng, cases),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        let results = run_selftest(60, 7);
        for r in &results {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }
}
