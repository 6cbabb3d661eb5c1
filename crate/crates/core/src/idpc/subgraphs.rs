use crate::error::{Error, Result};
use crate::roadmap::{EdgeId, Roadmap, VertexId};

/// Subgraph identifier, starting at 1.
pub type SubgraphId = usize;

/// Vertex-disjoint decomposition of the roadmap. A subgraph's edge set is
/// every edge with both endpoints inside it, so edges of executed cuts are
/// exactly the edges joining two subgraphs.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphSet {
    assignment: Vec<SubgraphId>,
    sizes: Vec<usize>,
    in_executed_cut: Vec<bool>,
}

impl SubgraphSet {
    /// A single subgraph holding the whole roadmap.
    pub fn new(roadmap: &Roadmap) -> Self {
        SubgraphSet {
            assignment: vec![1; roadmap.vertex_count()],
            sizes: vec![roadmap.vertex_count()],
            in_executed_cut: vec![false; roadmap.edge_count()],
        }
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn subgraph_of(&self, v: VertexId) -> SubgraphId {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[SubgraphId] {
        &self.assignment
    }

    pub fn size(&self, k: SubgraphId) -> usize {
        self.sizes[k - 1]
    }

    pub fn vertices(&self, k: SubgraphId) -> Vec<VertexId> {
        (0..self.assignment.len())
            .filter(|&v| self.assignment[v] == k)
            .collect()
    }

    pub fn edges(&self, k: SubgraphId, roadmap: &Roadmap) -> Vec<EdgeId> {
        (0..roadmap.edge_count())
            .filter(|&e| {
                let (u, v) = roadmap.endpoints(e);
                self.assignment[u] == k && self.assignment[v] == k
            })
            .collect()
    }

    /// Whether `e` belonged to a cut that has been executed.
    pub fn in_executed_cut(&self, e: EdgeId) -> bool {
        self.in_executed_cut[e]
    }

    /// Moves `sink_side` (all currently in `k`) to a new subgraph and
    /// records `cut` as executed. Returns the new id.
    pub fn split(&mut self, k: SubgraphId, sink_side: &[VertexId], cut: &[EdgeId]) -> Result<SubgraphId> {
        let new_id = self.count() + 1;
        for &v in sink_side {
            if self.assignment[v] != k {
                return Err(Error::contract(format!("vertex {v} is not in subgraph {k}")));
            }
            self.assignment[v] = new_id;
        }
        self.sizes[k - 1] -= sink_side.len();
        self.sizes.push(sink_side.len());
        for &e in cut {
            self.in_executed_cut[e] = true;
        }
        Ok(new_id)
    }

    /// The edge sets are disjoint by construction; checks that together
    /// they cover exactly the edges never placed in an executed cut.
    pub fn check_decomposition(&self, roadmap: &Roadmap) -> Result<()> {
        for e in 0..roadmap.edge_count() {
            let (u, v) = roadmap.endpoints(e);
            let inside = self.assignment[u] == self.assignment[v];
            if inside == self.in_executed_cut[e] {
                return Err(Error::contract(format!(
                    "edge {e} breaks the decomposition (inside a subgraph: {inside})"
                )));
            }
        }
        let total: usize = self.sizes.iter().sum();
        if total != self.assignment.len() {
            return Err(Error::contract("subgraph sizes do not cover the vertices"));
        }
        Ok(())
    }
}
