//! Divide-and-conquer path and cut finding.
//!
//! The roadmap is split into vertex-disjoint subgraphs along executed cuts.
//! Cut searches only ever look at one subgraph, with its substarts and
//! subgoals (endpoints of confirmed-free cut edges) merged behind dummy
//! terminals. An [`AbstractGraph`] over those endpoints decides when the
//! collision edges found so far separate start from goal.
//!
//! [`IdpcRun`] exposes the run one iteration at a time so callers can
//! inspect the decomposition between iterations; [`run_idpc`] drives it to
//! completion.

mod abstract_graph;
mod subgraphs;

use std::fmt;

pub use abstract_graph::{AbstractEdge, AbstractEdgeKind, AbstractGraph, AbstractVertex, Role};
pub use subgraphs::{SubgraphId, SubgraphSet};

use crate::error::{Error, Result};
use crate::ipc::{evaluate_edges, force_cut_edge, longest_collision_run, path_rounds, reset_edge_values, run_center, PathRounds};
use crate::oracle::{EdgeOracle, EvaluationLedger};
use crate::roadmap::{EdgeId, EdgeStatus, ExtValue, Roadmap, VertexId};
use crate::search::{most_probable_cut, reachable_from, CandidateCut, CandidatePath, Side};
use crate::verdict::{Certificate, IterationStats, RunClock, Verdict};

/// Column names of [`IterationTrace`] lines.
pub const TRACE_HEADER: &str = "iter k_star cut_size free_in_cut g |V~| |E~|";

/// One line of per-iteration accounting. Iterations that end before the
/// cut phase, or skip it, show `-` for the cut columns.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub iteration: usize,
    pub k_star: Option<SubgraphId>,
    pub cut_size: Option<usize>,
    pub free_in_cut: usize,
    pub subgraphs: usize,
    pub abstract_vertices: usize,
    pub abstract_edges: usize,
}

impl fmt::Display for IterationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dash = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        write!(
            f,
            "{} {} {} {} {} {} {}",
            self.iteration,
            dash(self.k_star),
            dash(self.cut_size),
            self.free_in_cut,
            self.subgraphs,
            self.abstract_vertices,
            self.abstract_edges
        )
    }
}

/// A cut computed inside one subgraph, in roadmap ids.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCut {
    /// Subgraph edges crossing the partition, in index order.
    pub edges: Vec<EdgeId>,
    pub total_capacity: f64,
    /// Subgraph vertices that end up on the sink side.
    pub sink_side: Vec<VertexId>,
    /// Vertices handed to the cut search, dummy terminals included.
    pub input_vertices: usize,
}

/// Subgraph id of every vertex of `path`, after marking confirmed every
/// pair of abstract vertices joined by a free stretch of `path` inside one
/// subgraph.
pub fn reflect_path_evaluation(
    subgraphs: &SubgraphSet,
    abstract_graph: &mut AbstractGraph,
    path: &CandidatePath,
    roadmap: &Roadmap,
) -> Vec<SubgraphId> {
    let ids: Vec<SubgraphId> = path.vertices.iter().map(|&v| subgraphs.subgraph_of(v)).collect();
    let mut stretch: Vec<usize> = Vec::new();
    let flush = |stretch: &mut Vec<usize>, g: &mut AbstractGraph| {
        for i in 0..stretch.len() {
            for j in i + 1..stretch.len() {
                g.confirm(stretch[i], stretch[j]);
            }
        }
        stretch.clear();
    };
    for (i, &v) in path.vertices.iter().enumerate() {
        if i > 0 {
            let e = path.edges[i - 1];
            let joined = ids[i - 1] == ids[i] && roadmap.known_status(e) == Some(EdgeStatus::Free);
            if !joined {
                flush(&mut stretch, abstract_graph);
            }
        }
        if let Some(a) = abstract_graph.lookup(v) {
            stretch.push(a);
        }
    }
    flush(&mut stretch, abstract_graph);
    ids
}

/// The subgraph holding the longest run of collision edges along `path`,
/// with that run as `(first position, length)`. The earliest run wins ties.
pub fn choose_subgraph(
    path: &CandidatePath,
    subgraph_ids: &[SubgraphId],
    roadmap: &Roadmap,
) -> Result<(SubgraphId, (usize, usize))> {
    let (start, len) = longest_collision_run(path, roadmap)
        .ok_or_else(|| Error::contract("path has no collision edge"))?;
    let k = subgraph_ids[start];
    if subgraph_ids[start..=start + len].iter().any(|&id| id != k) {
        return Err(Error::contract("collision run leaves its subgraph"));
    }
    Ok((k, (start, len)))
}

/// Substarts and subgoals of subgraph `k` that still need separating,
/// as roadmap vertices. Both members of every confirmed substart–subgoal
/// pair are dropped.
pub fn cluster_substarts_and_subgoals(
    k: SubgraphId,
    abstract_graph: &AbstractGraph,
) -> (Vec<VertexId>, Vec<VertexId>) {
    let starts = abstract_graph.members(k, Role::Substart);
    let goals = abstract_graph.members(k, Role::Subgoal);
    let mut drop_start = vec![false; starts.len()];
    let mut drop_goal = vec![false; goals.len()];
    for (i, &a) in starts.iter().enumerate() {
        for (j, &b) in goals.iter().enumerate() {
            if abstract_graph.edge(a, b).is_some_and(|e| e.confirmed) {
                drop_start[i] = true;
                drop_goal[j] = true;
            }
        }
    }
    let keep = |ids: &[usize], dropped: &[bool]| -> Vec<VertexId> {
        ids.iter()
            .zip(dropped)
            .filter(|(_, &d)| !d)
            .map(|(&a, _)| abstract_graph.vertices()[a].vertex)
            .collect()
    };
    (keep(&starts, &drop_start), keep(&goals, &drop_goal))
}

/// Minimum cut inside subgraph `k` between its clustered substarts and
/// subgoals, using the roadmap's current capacities. A terminal set of
/// more than one vertex is merged behind a dummy vertex joined to each
/// member by an infinite-capacity edge.
pub fn local_cut(
    k: SubgraphId,
    substarts: &[VertexId],
    subgoals: &[VertexId],
    subgraphs: &SubgraphSet,
    roadmap: &Roadmap,
) -> Result<Option<LocalCut>> {
    if substarts.is_empty() || subgoals.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    let vertices = subgraphs.vertices(k);
    let mut local = vec![usize::MAX; roadmap.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let edges = subgraphs.edges(k, roadmap);
    let mut pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let (u, v) = roadmap.endpoints(e);
            (local[u], local[v])
        })
        .collect();
    let mut caps: Vec<ExtValue> = edges.iter().map(|&e| roadmap.capacity(e)).collect();

    let mut n = vertices.len();
    let mut terminal = |members: &[VertexId], pairs: &mut Vec<(usize, usize)>, caps: &mut Vec<ExtValue>| -> Result<usize> {
        for &m in members {
            if subgraphs.subgraph_of(m) != k {
                return Err(Error::contract(format!("terminal {m} is outside subgraph {k}")));
            }
        }
        if let [only] = members {
            return Ok(local[*only]);
        }
        let dummy = n;
        n += 1;
        for &m in members {
            pairs.push((dummy, local[m]));
            caps.push(ExtValue::Inf);
        }
        Ok(dummy)
    };
    let source = terminal(substarts, &mut pairs, &mut caps)?;
    let sink = terminal(subgoals, &mut pairs, &mut caps)?;

    let Some(cut) = most_probable_cut(n, &pairs, &caps, &[source], &[sink])? else {
        return Ok(None);
    };
    Ok(Some(LocalCut {
        edges: cut.edges.iter().map(|&i| edges[i]).collect(),
        total_capacity: cut.total_capacity,
        sink_side: vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| cut.side(i) == Side::Sink)
            .map(|(_, &v)| v)
            .collect(),
        input_vertices: n,
    }))
}

/// Splits subgraph `k` along an evaluated local cut. The sink side becomes
/// a new subgraph; each confirmed-free cut edge contributes a subgoal on
/// the source side and a substart on the sink side, joined by a confirmed
/// cross edge. Returns the new subgraph id.
pub fn subgraph_partition(
    k: SubgraphId,
    cut: &LocalCut,
    subgraphs: &mut SubgraphSet,
    abstract_graph: &mut AbstractGraph,
    roadmap: &Roadmap,
) -> Result<SubgraphId> {
    let new_id = subgraphs.split(k, &cut.sink_side, &cut.edges)?;
    abstract_graph.relocate(&cut.sink_side, new_id);
    for &e in &cut.edges {
        match roadmap.known_status(e) {
            Some(EdgeStatus::Free) => {}
            Some(EdgeStatus::Collision) => continue,
            None => return Err(Error::contract(format!("cut edge {e} was not evaluated"))),
        }
        let (mut u, mut v) = roadmap.endpoints(e);
        if subgraphs.subgraph_of(u) == new_id {
            std::mem::swap(&mut u, &mut v);
        }
        let a = abstract_graph.ensure_vertex(u, k, Role::Subgoal);
        let b = abstract_graph.ensure_vertex(v, new_id, Role::Substart);
        abstract_graph.add_cross_edge(a, b);
        abstract_graph.connect_to_peers(a);
        abstract_graph.connect_to_peers(b);
    }
    Ok(new_id)
}

/// True when the abstract graph no longer links start to goal, which
/// proves the query infeasible.
pub fn check_cut_existence(abstract_graph: &AbstractGraph) -> bool {
    !abstract_graph.goal_reachable()
}

/// The start's component over edges not known to collide, returned as the
/// cut of collision edges leaving it.
fn separating_cut(roadmap: &Roadmap) -> Result<CandidateCut> {
    let (s, g) = roadmap.query()?;
    let reach = reachable_from(roadmap, s, |e| roadmap.known_status(e) != Some(EdgeStatus::Collision));
    if reach[g] {
        return Err(Error::contract(
            "abstract graph disconnected while start and goal remain connected",
        ));
    }
    Ok(CandidateCut::from_vertex_set(
        &roadmap.edge_list(),
        roadmap.capacities(),
        &reach,
    ))
}

pub enum Step {
    Continue(IterationTrace),
    Done(Verdict),
}

/// A divide-and-conquer run in progress.
pub struct IdpcRun<'a> {
    roadmap: &'a mut Roadmap,
    oracle: &'a dyn EdgeOracle,
    paths_per_iteration: usize,
    ledger: EvaluationLedger,
    stats: IterationStats,
    clock: RunClock,
    subgraphs: SubgraphSet,
    abstract_graph: AbstractGraph,
    trace: Vec<IterationTrace>,
    finished: bool,
}

impl<'a> IdpcRun<'a> {
    pub fn new(
        roadmap: &'a mut Roadmap,
        oracle: &'a dyn EdgeOracle,
        paths_per_iteration: usize,
    ) -> Result<Self> {
        if paths_per_iteration == 0 {
            return Err(Error::contract("paths_per_iteration must be at least 1"));
        }
        let mut clock = RunClock::start();
        let (s, g) = roadmap.query()?;
        let subgraphs = SubgraphSet::new(roadmap);
        let abstract_graph = AbstractGraph::initialize(s, g);
        clock.pause();
        Ok(IdpcRun {
            roadmap,
            oracle,
            paths_per_iteration,
            ledger: EvaluationLedger::new(),
            stats: IterationStats::default(),
            clock,
            subgraphs,
            abstract_graph,
            trace: Vec::new(),
            finished: false,
        })
    }

    pub fn roadmap(&self) -> &Roadmap {
        self.roadmap
    }

    pub fn subgraphs(&self) -> &SubgraphSet {
        &self.subgraphs
    }

    pub fn abstract_graph(&self) -> &AbstractGraph {
        &self.abstract_graph
    }

    pub fn ledger(&self) -> &EvaluationLedger {
        &self.ledger
    }

    pub fn stats(&self) -> &IterationStats {
        &self.stats
    }

    pub fn trace(&self) -> &[IterationTrace] {
        &self.trace
    }

    /// Runs one iteration.
    pub fn step(&mut self) -> Result<Step> {
        if self.finished {
            return Err(Error::contract("run already finished"));
        }
        self.clock.resume();
        let outcome = self.iterate();
        self.clock.pause();
        let certificate = match outcome? {
            None => {
                let trace = self.trace.last().cloned().expect("iteration traced");
                return Ok(Step::Continue(trace));
            }
            Some(c) => c,
        };
        self.finished = true;
        self.clock.sync(&mut self.stats, &self.ledger);
        Ok(Step::Done(Verdict {
            certificate,
            stats: self.stats.clone(),
        }))
    }

    /// Runs to completion.
    pub fn run(mut self) -> Result<Verdict> {
        loop {
            if let Step::Done(v) = self.step()? {
                return Ok(v);
            }
        }
    }

    fn iterate(&mut self) -> Result<Option<Certificate>> {
        let limit = self.roadmap.edge_count() + 1;
        if self.stats.n_iterations >= limit {
            return Err(Error::contract(format!("more than {limit} iterations")));
        }
        self.clock.begin_iteration(&mut self.stats, &self.ledger);
        let mut trace = IterationTrace {
            iteration: self.stats.n_iterations,
            k_star: None,
            cut_size: None,
            free_in_cut: 0,
            subgraphs: 0,
            abstract_vertices: 0,
            abstract_edges: 0,
        };
        let result = self.iterate_inner(&mut trace);
        self.clock.end_iteration(&mut self.stats, &self.ledger);
        trace.subgraphs = self.subgraphs.count();
        trace.abstract_vertices = self.abstract_graph.vertex_count();
        trace.abstract_edges = self.abstract_graph.edge_count();
        self.trace.push(trace);
        self.clock.sync(&mut self.stats, &self.ledger);
        result
    }

    fn iterate_inner(&mut self, trace: &mut IterationTrace) -> Result<Option<Certificate>> {
        let subgraphs = &self.subgraphs;
        let abstract_graph = &mut self.abstract_graph;
        let path = match path_rounds(
            self.paths_per_iteration,
            self.roadmap,
            self.oracle,
            &mut self.ledger,
            &mut self.stats,
            |p, r| {
                reflect_path_evaluation(subgraphs, abstract_graph, p, r);
                Ok(())
            },
        )? {
            PathRounds::Done(c) => return Ok(Some(c)),
            PathRounds::Blocked(p) => p,
        };

        let ids: Vec<SubgraphId> = path
            .vertices
            .iter()
            .map(|&v| self.subgraphs.subgraph_of(v))
            .collect();
        let (k, (run_start, run_len)) = choose_subgraph(&path, &ids, self.roadmap)?;
        trace.k_star = Some(k);
        let forced = path.edges[run_center(run_start, run_len)];

        let (starts, goals) = cluster_substarts_and_subgoals(k, &self.abstract_graph);
        if starts.is_empty() || goals.is_empty() {
            return Ok(None);
        }

        force_cut_edge(&path, forced, self.roadmap);
        let dummies = usize::from(starts.len() > 1) + usize::from(goals.len() > 1);
        self.stats.record_cut_call(self.subgraphs.size(k) + dummies);
        let cut = local_cut(k, &starts, &goals, &self.subgraphs, self.roadmap);
        reset_edge_values(&path, self.roadmap);
        let Some(cut) = cut? else {
            return Ok(None);
        };

        evaluate_edges(&cut.edges, self.roadmap, self.oracle, &mut self.ledger)?;
        trace.cut_size = Some(cut.edges.len());
        trace.free_in_cut = cut
            .edges
            .iter()
            .filter(|&&e| self.roadmap.known_status(e) == Some(EdgeStatus::Free))
            .count();

        subgraph_partition(k, &cut, &mut self.subgraphs, &mut self.abstract_graph, self.roadmap)?;
        if check_cut_existence(&self.abstract_graph) {
            return Ok(Some(Certificate::Infeasible(separating_cut(self.roadmap)?)));
        }
        Ok(None)
    }
}

/// Runs divide-and-conquer path and cut finding until a certificate is
/// found.
pub fn run_idpc(
    roadmap: &mut Roadmap,
    oracle: &dyn EdgeOracle,
    paths_per_iteration: usize,
) -> Result<Verdict> {
    IdpcRun::new(roadmap, oracle, paths_per_iteration)?.run()
}
