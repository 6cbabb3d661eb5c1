use std::collections::{BTreeMap, HashMap, VecDeque};

use super::subgraphs::SubgraphId;
use crate::roadmap::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Substart,
    Subgoal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbstractEdgeKind {
    /// Substart to subgoal inside one subgraph.
    IntraPair,
    /// A confirmed-free cut edge joining two subgraphs.
    ConfirmedCross,
    /// Two substarts or two subgoals inside one subgraph.
    IntraSameType,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbstractVertex {
    /// The roadmap vertex this abstract vertex stands for.
    pub vertex: VertexId,
    pub subgraph: SubgraphId,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbstractEdge {
    pub kind: AbstractEdgeKind,
    /// Whether a confirmed-free connection between the endpoints is known.
    pub confirmed: bool,
}

/// Connectivity summary over substarts and subgoals.
///
/// Abstract vertices of the same subgraph are kept pairwise adjacent, so
/// the graph disconnects only when every start-to-goal route would need a
/// cut edge known to be in collision.
#[derive(Debug, Clone, PartialEq)]
pub struct AbstractGraph {
    vertices: Vec<AbstractVertex>,
    by_vertex: HashMap<VertexId, usize>,
    edges: BTreeMap<(usize, usize), AbstractEdge>,
    start: usize,
    goal: usize,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl AbstractGraph {
    /// The start as a substart and the goal as a subgoal, both in
    /// subgraph 1, joined by one unconfirmed edge.
    pub fn initialize(start: VertexId, goal: VertexId) -> Self {
        let mut g = AbstractGraph {
            vertices: Vec::new(),
            by_vertex: HashMap::new(),
            edges: BTreeMap::new(),
            start: 0,
            goal: 0,
        };
        g.start = g.ensure_vertex(start, 1, Role::Substart);
        g.goal = g.ensure_vertex(goal, 1, Role::Subgoal);
        if g.start != g.goal {
            g.edges.insert(
                key(g.start, g.goal),
                AbstractEdge {
                    kind: AbstractEdgeKind::IntraPair,
                    confirmed: false,
                },
            );
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[AbstractVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), AbstractEdge)> + '_ {
        self.edges.iter().map(|(&k, &e)| (k, e))
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn goal(&self) -> usize {
        self.goal
    }

    /// Abstract vertex standing for roadmap vertex `v`, if any.
    pub fn lookup(&self, v: VertexId) -> Option<usize> {
        self.by_vertex.get(&v).copied()
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<AbstractEdge> {
        self.edges.get(&key(a, b)).copied()
    }

    /// Returns the abstract vertex for `v`, adding it when absent. An
    /// existing vertex keeps its role.
    pub fn ensure_vertex(&mut self, v: VertexId, subgraph: SubgraphId, role: Role) -> usize {
        if let Some(&a) = self.by_vertex.get(&v) {
            return a;
        }
        self.vertices.push(AbstractVertex {
            vertex: v,
            subgraph,
            role,
        });
        let a = self.vertices.len() - 1;
        self.by_vertex.insert(v, a);
        a
    }

    /// Adds unconfirmed edges from `a` to every abstract vertex of its
    /// subgraph not yet adjacent to it.
    pub fn connect_to_peers(&mut self, a: usize) {
        let AbstractVertex { subgraph, role, .. } = self.vertices[a];
        for b in 0..self.vertices.len() {
            if b == a || self.vertices[b].subgraph != subgraph {
                continue;
            }
            let kind = if self.vertices[b].role == role {
                AbstractEdgeKind::IntraSameType
            } else {
                AbstractEdgeKind::IntraPair
            };
            self.edges.entry(key(a, b)).or_insert(AbstractEdge {
                kind,
                confirmed: false,
            });
        }
    }

    pub fn add_cross_edge(&mut self, a: usize, b: usize) {
        self.edges.insert(
            key(a, b),
            AbstractEdge {
                kind: AbstractEdgeKind::ConfirmedCross,
                confirmed: true,
            },
        );
    }

    /// Marks the edge between `a` and `b` as confirmed. Returns false when
    /// no such edge exists.
    pub fn confirm(&mut self, a: usize, b: usize) -> bool {
        match self.edges.get_mut(&key(a, b)) {
            Some(e) => {
                e.confirmed = true;
                true
            }
            None => false,
        }
    }

    /// Moves the abstract vertices of the given roadmap vertices to
    /// subgraph `to` and drops within-subgraph edges that now join two
    /// different subgraphs.
    pub fn relocate(&mut self, moved: &[VertexId], to: SubgraphId) {
        for v in moved {
            if let Some(&a) = self.by_vertex.get(v) {
                self.vertices[a].subgraph = to;
            }
        }
        let vertices = &self.vertices;
        self.edges.retain(|&(a, b), e| {
            e.kind == AbstractEdgeKind::ConfirmedCross || vertices[a].subgraph == vertices[b].subgraph
        });
    }

    /// Abstract vertices of subgraph `k` with the given role.
    pub fn members(&self, k: SubgraphId, role: Role) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&a| self.vertices[a].subgraph == k && self.vertices[a].role == role)
            .collect()
    }

    /// Breadth-first search from the start's abstract vertex.
    pub fn goal_reachable(&self) -> bool {
        if self.start == self.goal {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if b == self.goal {
                    return true;
                }
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        false
    }
}
