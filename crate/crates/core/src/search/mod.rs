//! Candidate path and cut search, plus plain reachability.
//!
//! Paths minimise the sum of edge weights `ln(1/p)` with Dijkstra, which
//! maximises the product of priors. Cuts minimise the sum of capacities
//! `ln(1/(1-p))` with push–relabel, which maximises the probability that
//! every cut edge is in collision.

mod dijkstra;
mod push_relabel;

use std::collections::VecDeque;

pub use push_relabel::FlowNetwork;

use crate::error::{Error, Result};
use crate::roadmap::{EdgeId, ExtValue, Roadmap, VertexId};

/// Absolute tolerance for comparing accumulated weights and capacities.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// A start-to-goal walk found by [`most_probable_path`].
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePath {
    /// Visited vertices, `edges.len() + 1` of them.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub total_weight: f64,
}

impl CandidatePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Product of the priors along the path.
    pub fn probability(&self) -> f64 {
        (-self.total_weight).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Sink,
}

/// A source/sink edge cut found by [`most_probable_cut`] or extracted
/// from a reachability frontier.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateCut {
    /// Every edge with endpoints on opposite sides, in index order.
    pub edges: Vec<EdgeId>,
    pub total_capacity: f64,
    /// Side of each vertex in the searched graph.
    pub partition: Vec<Side>,
}

impl CandidateCut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.partition[v]
    }

    /// The cut induced by a vertex set: every edge leaving `inside`.
    /// Capacities are summed from `capacities`, infinite entries
    /// contributing nothing.
    pub fn from_vertex_set(
        edges: &[(VertexId, VertexId)],
        capacities: &[ExtValue],
        inside: &[bool],
    ) -> CandidateCut {
        let partition: Vec<Side> = inside
            .iter()
            .map(|&i| if i { Side::Source } else { Side::Sink })
            .collect();
        let cut: Vec<EdgeId> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| inside[u] != inside[v])
            .map(|(e, _)| e)
            .collect();
        let total_capacity = cut.iter().filter_map(|&e| capacities[e].finite()).sum();
        CandidateCut {
            edges: cut,
            total_capacity,
            partition,
        }
    }
}

fn check_vertex(n: usize, v: VertexId) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v))
    }
}

fn adjacency(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Vec<Vec<(VertexId, EdgeId)>>> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        check_vertex(n, u)?;
        check_vertex(n, v)?;
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    Ok(adj)
}

/// Minimum-weight path from `start` to `goal` over edges of finite weight,
/// or `None` when every route crosses an infinite-weight edge.
pub fn most_probable_path(
    n: usize,
    edges: &[(VertexId, VertexId)],
    weights: &[ExtValue],
    start: VertexId,
    goal: VertexId,
) -> Result<Option<CandidatePath>> {
    check_vertex(n, start)?;
    check_vertex(n, goal)?;
    if weights.len() != edges.len() {
        return Err(Error::contract("one weight per edge required"));
    }
    let adj = adjacency(n, edges)?;
    Ok(dijkstra::shortest_path(
        n,
        |v| adj[v].iter(),
        weights,
        start,
        goal,
    ))
}

/// [`most_probable_path`] between the roadmap's query vertices using its
/// current weights.
pub fn roadmap_path(roadmap: &Roadmap) -> Result<Option<CandidatePath>> {
    let (s, g) = roadmap.query()?;
    Ok(dijkstra::shortest_path(
        roadmap.vertex_count(),
        |v| roadmap.neighbors(v).iter(),
        roadmap.weights(),
        s,
        g,
    ))
}

/// Minimum-capacity cut of the undirected graph separating every vertex
/// in `sources` from every vertex in `sinks`.
///
/// Infinite capacities are replaced by `S + 1`, `S` being the sum of the
/// finite ones, and terminal sets are joined to internal super terminals
/// with arcs of that capacity. A flow above `S` means no cut avoids an
/// infinite edge and `None` is returned. The cut reported is the one whose
/// source side is the residual reachability set of the super source.
pub fn most_probable_cut(
    n: usize,
    edges: &[(VertexId, VertexId)],
    capacities: &[ExtValue],
    sources: &[VertexId],
    sinks: &[VertexId],
) -> Result<Option<CandidateCut>> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    if capacities.len() != edges.len() {
        return Err(Error::contract("one capacity per edge required"));
    }
    let mut is_source = vec![false; n];
    for &s in sources {
        check_vertex(n, s)?;
        is_source[s] = true;
    }
    for &t in sinks {
        check_vertex(n, t)?;
        if is_source[t] {
            return Err(Error::OverlappingTerminals(t));
        }
    }

    let finite_sum: f64 = capacities.iter().filter_map(|c| c.finite()).sum();
    let surrogate = finite_sum + 1.0;
    let super_source = n;
    let super_sink = n + 1;
    let mut net = FlowNetwork::new(n + 2);
    let mut max_cap: f64 = 1.0;
    for (e, &(u, v)) in edges.iter().enumerate() {
        check_vertex(n, u)?;
        check_vertex(n, v)?;
        let c = capacities[e].finite().unwrap_or(surrogate);
        max_cap = max_cap.max(c);
        net.add_edge(u, v, c, c);
    }
    for &s in sources {
        net.add_edge(super_source, s, surrogate, 0.0);
    }
    for &t in sinks {
        net.add_edge(t, super_sink, surrogate, 0.0);
    }
    max_cap = max_cap.max(surrogate);

    let flow = net.max_flow(super_source, super_sink);
    if flow > finite_sum + 0.5 {
        return Ok(None);
    }
    let reach = net.source_side(super_source, TIE_TOLERANCE * max_cap);
    let cut = CandidateCut::from_vertex_set(edges, capacities, &reach[..n]);
    if cut.edges.iter().any(|&e| capacities[e].is_inf()) {
        return Err(Error::contract("minimum cut crossed an infinite edge"));
    }
    Ok(Some(cut))
}

/// Maximum flow value between two vertices, each undirected edge carrying
/// its capacity in both directions. Infinite capacities are not accepted.
pub fn max_flow_value(
    n: usize,
    edges: &[(VertexId, VertexId)],
    capacities: &[f64],
    source: VertexId,
    sink: VertexId,
) -> Result<f64> {
    check_vertex(n, source)?;
    check_vertex(n, sink)?;
    let mut net = FlowNetwork::new(n);
    for (&(u, v), &c) in edges.iter().zip(capacities) {
        check_vertex(n, u)?;
        check_vertex(n, v)?;
        if !c.is_finite() || c < 0.0 {
            return Err(Error::contract(format!("capacity {c} is not finite and non-negative")));
        }
        net.add_edge(u, v, c, c);
    }
    Ok(net.max_flow(source, sink))
}

/// Vertices reachable from `start` through edges accepted by `usable`.
pub fn reachable_from<F>(roadmap: &Roadmap, start: VertexId, usable: F) -> Vec<bool>
where
    F: Fn(EdgeId) -> bool,
{
    let mut seen = vec![false; roadmap.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in roadmap.neighbors(u) {
            if !seen[v] && usable(e) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Fewest-edge path from `start` to `goal` through edges accepted by
/// `usable`, or `None` when there is none.
pub fn bfs_path<F>(roadmap: &Roadmap, start: VertexId, goal: VertexId, usable: F) -> Option<CandidatePath>
where
    F: Fn(EdgeId) -> bool,
{
    let n = roadmap.vertex_count();
    let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        for &(v, e) in roadmap.neighbors(u) {
            if !seen[v] && usable(e) {
                seen[v] = true;
                pred[v] = Some((u, e));
                queue.push_back(v);
            }
        }
    }
    if !seen[goal] {
        return None;
    }
    let mut vertices = vec![goal];
    let mut edges = Vec::new();
    let mut cur = goal;
    while let Some((p, e)) = pred[cur] {
        vertices.push(p);
        edges.push(e);
        cur = p;
    }
    vertices.reverse();
    edges.reverse();
    let total_weight = edges.iter().filter_map(|&e| roadmap.weight(e).finite()).sum();
    Some(CandidatePath {
        vertices,
        edges,
        total_weight,
    })
}

/// Breadth-first reachability on an explicit edge list.
pub fn bfs_connected(
    n: usize,
    edges: &[(VertexId, VertexId)],
    s: VertexId,
    t: VertexId,
) -> Result<bool> {
    check_vertex(n, s)?;
    check_vertex(n, t)?;
    if s == t {
        return Ok(true);
    }
    let adj = adjacency(n, edges)?;
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if v == t {
                return Ok(true);
            }
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(false)
}
