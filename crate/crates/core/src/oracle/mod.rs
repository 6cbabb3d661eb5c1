//! Ground-truth edge evaluation and the evaluation ledger.
//!
//! Oracle calls are the expensive resource every algorithm in this crate
//! tries to save, so each call goes through [`evaluate_edge`], which records
//! it in an [`EvaluationLedger`] and pins the edge's values in the roadmap.

mod geometry;
mod scene;

use std::collections::HashMap;
use std::time::{Duration, Instant};

pub use geometry::{point_in_polygon, segment_hits_polygon, segments_intersect};
pub use scene::{bundled_scene, BundledScene, ConvexObstacle, Scene, SegmentChecker, BUNDLED_SCENES};

use crate::error::{Error, Result};
use crate::roadmap::{EdgeId, EdgeStatus, Roadmap, VertexId};

/// Reveals the ground-truth status of a roadmap edge.
pub trait EdgeOracle: Sync {
    fn evaluate(&self, roadmap: &Roadmap, edge: EdgeId) -> Result<EdgeStatus>;
}

/// Evaluates edges geometrically against a scene.
#[derive(Debug, Clone, Copy)]
pub struct SceneOracle<'a> {
    scene: &'a Scene,
}

impl<'a> SceneOracle<'a> {
    pub fn new(scene: &'a Scene) -> Self {
        SceneOracle { scene }
    }
}

impl EdgeOracle for SceneOracle<'_> {
    fn evaluate(&self, roadmap: &Roadmap, edge: EdgeId) -> Result<EdgeStatus> {
        let (u, v) = roadmap.endpoints(edge);
        self.scene.evaluate_segment(roadmap.vertex(u), roadmap.vertex(v))
    }
}

/// Precomputed ground truth keyed by vertex pair. Lookups do no geometric
/// work, which keeps oracle cost out of algorithm timings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TableOracle {
    table: HashMap<(VertexId, VertexId), EdgeStatus>,
}

impl TableOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId, status: EdgeStatus) {
        self.table.insert((u.min(v), u.max(v)), status);
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<EdgeStatus> {
        self.table.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// One status per roadmap edge, in edge order.
    pub fn from_statuses(roadmap: &Roadmap, statuses: &[EdgeStatus]) -> Result<Self> {
        if statuses.len() != roadmap.edge_count() {
            return Err(Error::contract(format!(
                "{} statuses for {} edges",
                statuses.len(),
                roadmap.edge_count()
            )));
        }
        let mut t = TableOracle::new();
        for (e, &s) in statuses.iter().enumerate() {
            let (u, v) = roadmap.endpoints(e);
            t.insert(u, v, s);
        }
        Ok(t)
    }

    pub fn from_scene(scene: &Scene, roadmap: &Roadmap) -> Result<Self> {
        let oracle = SceneOracle::new(scene);
        let statuses = (0..roadmap.edge_count())
            .map(|e| oracle.evaluate(roadmap, e))
            .collect::<Result<Vec<_>>>()?;
        Self::from_statuses(roadmap, &statuses)
    }

    /// Status of every roadmap edge, in edge order.
    pub fn statuses(&self, roadmap: &Roadmap) -> Result<Vec<EdgeStatus>> {
        (0..roadmap.edge_count())
            .map(|e| self.evaluate(roadmap, e))
            .collect()
    }
}

impl EdgeOracle for TableOracle {
    fn evaluate(&self, roadmap: &Roadmap, edge: EdgeId) -> Result<EdgeStatus> {
        let (u, v) = roadmap.endpoints(edge);
        self.get(u, v).ok_or(Error::MissingTruth(u, v))
    }
}

/// Record of every oracle call made during one run.
#[derive(Debug, Clone, Default)]
pub struct EvaluationLedger {
    statuses: HashMap<EdgeId, (EdgeStatus, usize)>,
    order: Vec<EdgeId>,
    oracle_time: Duration,
}

impl EvaluationLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn n_evaluations(&self) -> usize {
        self.order.len()
    }

    pub fn status(&self, e: EdgeId) -> Option<EdgeStatus> {
        self.statuses.get(&e).map(|s| s.0)
    }

    /// Position of `e` in evaluation order.
    pub fn order_index(&self, e: EdgeId) -> Option<usize> {
        self.statuses.get(&e).map(|s| s.1)
    }

    pub fn order(&self) -> &[EdgeId] {
        &self.order
    }

    /// Time spent inside oracle calls.
    pub fn oracle_time(&self) -> Duration {
        self.oracle_time
    }
}

/// Queries the oracle once for `edge`, logs the result and updates the
/// roadmap. Evaluating an edge twice is a contract violation.
pub fn evaluate_edge(
    ledger: &mut EvaluationLedger,
    oracle: &dyn EdgeOracle,
    roadmap: &mut Roadmap,
    edge: EdgeId,
) -> Result<EdgeStatus> {
    if edge >= roadmap.edge_count() {
        return Err(Error::UnknownEdge(edge));
    }
    if ledger.statuses.contains_key(&edge) || roadmap.state(edge) != Default::default() {
        return Err(Error::AlreadyEvaluated(edge));
    }
    let t0 = Instant::now();
    let status = oracle.evaluate(roadmap, edge)?;
    ledger.oracle_time += t0.elapsed();
    roadmap.record_evaluation(edge, status)?;
    ledger.statuses.insert(edge, (status, ledger.order.len()));
    ledger.order.push(edge);
    Ok(status)
}
