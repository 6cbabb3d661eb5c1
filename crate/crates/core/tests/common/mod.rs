//! Independent reference implementations used to check the library.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::Rng;
use roadmap_feasibility::generators::{InstanceSpec, PriorMode, RoadmapKind};
use roadmap_feasibility::roadmap::{EdgeStatus, Roadmap, VertexId};
use roadmap_feasibility::search::bfs_connected;
use roadmap_feasibility::{Certificate, Verdict};

pub fn spec(scene: &str, n_edges: usize, prior: PriorMode, blocked: bool, seed: u64) -> InstanceSpec {
    InstanceSpec {
        scene: scene.to_string(),
        kind: RoadmapKind::Prm,
        size: n_edges,
        n_vertices: None,
        k_neighbors: None,
        prior,
        blocked,
        seed,
    }
}

pub fn noisy() -> PriorMode {
    PriorMode::Noisy(Default::default())
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Start and goal in one component of the free edges.
pub fn union_find_feasible(roadmap: &Roadmap, truth: &[EdgeStatus]) -> bool {
    let (s, g) = roadmap.query().unwrap();
    let mut dsu = Dsu((0..roadmap.vertex_count()).collect());
    for (e, (u, v)) in roadmap.edge_list().into_iter().enumerate() {
        if truth[e] == EdgeStatus::Free {
            let (a, b) = (dsu.find(u), dsu.find(v));
            dsu.0[a] = b;
        }
    }
    dsu.find(s) == dsu.find(g)
}

/// Checks a certificate against the truth table and the roadmap's
/// recorded knowledge.
pub fn certificate_ok(roadmap: &Roadmap, truth: &[EdgeStatus], verdict: &Verdict) -> Result<(), String> {
    let (s, g) = roadmap.query().unwrap();
    match &verdict.certificate {
        Certificate::Feasible(p) => {
            if p.vertices.first() != Some(&s) || p.vertices.last() != Some(&g) {
                return Err("path does not run from start to goal".into());
            }
            if p.vertices.len() != p.edges.len() + 1 {
                return Err("path vertex and edge counts disagree".into());
            }
            for (i, &e) in p.edges.iter().enumerate() {
                let (a, b) = roadmap.endpoints(e);
                let (x, y) = (p.vertices[i], p.vertices[i + 1]);
                if !((a, b) == (x, y) || (a, b) == (y, x)) {
                    return Err(format!("edge {e} does not join {x} and {y}"));
                }
                if truth[e] != EdgeStatus::Free || roadmap.known_status(e) != Some(EdgeStatus::Free) {
                    return Err(format!("path edge {e} is not confirmed free"));
                }
            }
            Ok(())
        }
        Certificate::Infeasible(c) => {
            let mut in_cut = vec![false; roadmap.edge_count()];
            for &e in &c.edges {
                if truth[e] != EdgeStatus::Collision || roadmap.known_status(e) != Some(EdgeStatus::Collision) {
                    return Err(format!("cut edge {e} is not confirmed in collision"));
                }
                in_cut[e] = true;
            }
            let rest: Vec<(VertexId, VertexId)> = roadmap
                .edge_list()
                .into_iter()
                .enumerate()
                .filter(|&(e, _)| !in_cut[e])
                .map(|(_, uv)| uv)
                .collect();
            if bfs_connected(roadmap.vertex_count(), &rest, s, g).unwrap() {
                return Err("start and goal stay connected without the cut".into());
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub probs: Vec<f64>,
}

/// Random simple graph with up to `max_n` vertices. With `certain`, some
/// probabilities are exactly 0 or 1.
pub fn small_graph(rng: &mut impl Rng, max_n: usize, certain: bool) -> SmallGraph {
    let n = rng.random_range(2..=max_n);
    let density: f64 = rng.random_range(0.15..0.85);
    let mut edges = Vec::new();
    let mut probs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
                probs.push(match rng.random_range(0..12) {
                    0 if certain => 0.0,
                    1 if certain => 1.0,
                    _ => rng.random_range(0.02..0.98),
                });
            }
        }
    }
    SmallGraph { n, edges, probs }
}

/// Largest product of probabilities over simple `s`-`t` paths; 0 when
/// there is none.
pub fn best_path_product(g: &SmallGraph, s: VertexId, t: VertexId) -> f64 {
    let mut best = 0.0f64;
    let mut stack = vec![(s, 1.0f64, 1u64 << s)];
    while let Some((u, prod, seen)) = stack.pop() {
        if u == t {
            best = best.max(prod);
            continue;
        }
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            let w = match (a == u, b == u) {
                (true, _) => b,
                (_, true) => a,
                _ => continue,
            };
            if seen & (1 << w) == 0 {
                stack.push((w, prod * g.probs[e], seen | (1 << w)));
            }
        }
    }
    best
}

/// Minimum capacity over all vertex sets containing `s` but not `t`;
/// `None` capacities are infinite, and `None` is returned when every
/// separating set crosses one.
pub fn brute_min_cut(
    n: usize,
    edges: &[(VertexId, VertexId)],
    caps: &[Option<f64>],
    s: VertexId,
    t: VertexId,
) -> Option<f64> {
    let mut best: Option<f64> = None;
    for mask in 0u32..(1 << n) {
        if mask & (1 << s) == 0 || mask & (1 << t) != 0 {
            continue;
        }
        let mut total = Some(0.0);
        for (e, &(u, v)) in edges.iter().enumerate() {
            if (mask >> u) & 1 != (mask >> v) & 1 {
                total = match (total, caps[e]) {
                    (Some(x), Some(c)) => Some(x + c),
                    _ => None,
                };
            }
        }
        if let Some(x) = total {
            if best.is_none_or(|b| x < b) {
                best = Some(x);
            }
        }
    }
    best
}

/// Edmonds-Karp on an undirected capacity matrix.
pub fn edmonds_karp(n: usize, edges: &[(VertexId, VertexId)], caps: &[f64], s: VertexId, t: VertexId) -> f64 {
    let mut r = vec![vec![0.0f64; n]; n];
    for (&(u, v), &c) in edges.iter().zip(caps) {
        r[u][v] += c;
        r[v][u] += c;
    }
    let mut flow = 0.0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && r[u][v] > 1e-15 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(r[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            r[prev[v]][v] -= bottleneck;
            r[v][prev[v]] += bottleneck;
            v = prev[v];
        }
        flow += bottleneck;
    }
}

/// Two-sided 95% Student-t quantiles by degrees of freedom, from standard
/// tables.
pub const T975: [(usize, f64); 8] = [
    (1, 12.706_204_7),
    (2, 4.302_652_7),
    (3, 3.182_446_3),
    (4, 2.776_445_1),
    (5, 2.570_581_8),
    (9, 2.262_157_2),
    (19, 2.093_024_1),
    (29, 2.045_229_6),
];
