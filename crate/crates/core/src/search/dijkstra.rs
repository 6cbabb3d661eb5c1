use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{CandidatePath, TIE_TOLERANCE};
use crate::roadmap::{EdgeId, ExtValue, VertexId};

#[derive(Copy, Clone, PartialEq)]
struct State {
    dist: f64,
    vertex: VertexId,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then on vertex index
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra over finite weights. Among equal-distance relaxations of a
/// vertex that is not yet settled, the smaller predecessor index wins.
pub(super) fn shortest_path<'a, N, I>(
    n: usize,
    neighbors: N,
    weights: &[ExtValue],
    start: VertexId,
    goal: VertexId,
) -> Option<CandidatePath>
where
    N: Fn(VertexId) -> I,
    I: Iterator<Item = &'a (VertexId, EdgeId)>,
{
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    dist[start] = 0.0;
    heap.push(State {
        dist: 0.0,
        vertex: start,
    });

    while let Some(State { dist: d, vertex: u }) = heap.pop() {
        if settled[u] || d > dist[u] {
            continue;
        }
        settled[u] = true;
        if u == goal {
            break;
        }
        for &(v, e) in neighbors(u) {
            let Some(w) = weights[e].finite() else { continue };
            if settled[v] {
                continue;
            }
            let nd = d + w;
            if nd + TIE_TOLERANCE < dist[v] {
                dist[v] = nd;
                pred[v] = Some((u, e));
                heap.push(State { dist: nd, vertex: v });
            } else if (nd - dist[v]).abs() <= TIE_TOLERANCE {
                if let Some((p, _)) = pred[v] {
                    if u < p {
                        pred[v] = Some((u, e));
                    }
                }
            }
        }
    }

    if !settled[goal] {
        return None;
    }
    let mut vertices = vec![goal];
    let mut edges = Vec::new();
    let mut total = 0.0;
    let mut cur = goal;
    while let Some((p, e)) = pred[cur] {
        vertices.push(p);
        edges.push(e);
        total += weights[e].finite().unwrap_or(0.0);
        cur = p;
    }
    vertices.reverse();
    edges.reverse();
    Some(CandidatePath {
        vertices,
        edges,
        total_weight: total,
    })
}
