//! Prior roadmap data model.
//!
//! A [`Roadmap`] is an undirected simple graph whose vertices are robot
//! configurations and whose edges carry a prior probability `p` of being
//! collision-free. Every edge also carries the two derived values used by the
//! search engines: a path weight `log(1/p)` and a cut capacity
//! `log(1/(1-p))`. Deterministic or evaluated edges take the values `0` and
//! [`ExtValue::Inf`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::ops::Add;

use crate::error::{Error, Result};
use crate::oracle::SegmentChecker;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Number of nearest roadmap vertices tried when attaching a query endpoint.
pub const ATTACH_CANDIDATES: usize = 10;

/// A point in a `d`-dimensional configuration space.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration(Vec<f64>);

impl Configuration {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        Ok(Configuration(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn distance_squared(&self, other: &Configuration) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn distance(&self, other: &Configuration) -> f64 {
        self.distance_squared(other).sqrt()
    }
}

impl From<[f64; 2]> for Configuration {
    fn from(c: [f64; 2]) -> Self {
        Configuration(c.to_vec())
    }
}

/// A non-negative real extended with a distinguished infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtValue {
    Finite(f64),
    Inf,
}

impl ExtValue {
    pub const ZERO: ExtValue = ExtValue::Finite(0.0);

    pub fn is_inf(self) -> bool {
        matches!(self, ExtValue::Inf)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Inf => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == ExtValue::ZERO
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtValue::Inf, ExtValue::Inf) => Some(Ordering::Equal),
            (ExtValue::Inf, ExtValue::Finite(_)) => Some(Ordering::Greater),
            (ExtValue::Finite(_), ExtValue::Inf) => Some(Ordering::Less),
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Inf,
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => write!(f, "{v}"),
            ExtValue::Inf => f.write_str("inf"),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityDomain(p))
    }
}

/// Path weight of an edge with prior `p`: `ln(1/p)`, infinite for `p = 0`.
pub fn weight_from_prob(p: f64) -> Result<ExtValue> {
    check_probability(p)?;
    Ok(if p == 0.0 {
        ExtValue::Inf
    } else if p == 1.0 {
        ExtValue::ZERO
    } else {
        ExtValue::Finite(-p.ln())
    })
}

/// Cut capacity of an edge with prior `p`: `ln(1/(1-p))`, infinite for `p = 1`.
pub fn capacity_from_prob(p: f64) -> Result<ExtValue> {
    check_probability(p)?;
    Ok(if p == 0.0 {
        ExtValue::ZERO
    } else if p == 1.0 {
        ExtValue::Inf
    } else {
        ExtValue::Finite(-(-p).ln_1p())
    })
}

/// Ground-truth status of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    Free,
    Collision,
}

impl EdgeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeStatus::Free => "FREE",
            EdgeStatus::Collision => "COLLISION",
        }
    }
}

impl fmt::Display for EdgeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EdgeStatus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "FREE" => Ok(EdgeStatus::Free),
            "COLLISION" => Ok(EdgeStatus::Collision),
            other => Err(format!("unknown edge status `{other}`")),
        }
    }
}

/// Evaluation state of an edge. Moves out of `Unknown` at most once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeState {
    #[default]
    Unknown,
    Evaluated(EdgeStatus),
}

#[derive(Debug, Clone)]
struct EdgeRecord {
    endpoints: (VertexId, VertexId),
    prob: f64,
    state: EdgeState,
}

/// Result of [`Roadmap::attach_query`].
#[derive(Debug, Clone, PartialEq)]
pub struct QueryAttachment {
    pub start: VertexId,
    pub goal: VertexId,
    /// Connector edges added by the attachment; all confirmed collision-free.
    pub new_edges: Vec<EdgeId>,
}

/// The augmented prior roadmap: graph, priors, weights, capacities and
/// evaluation state, plus the attached start/goal vertices.
#[derive(Debug, Clone)]
pub struct Roadmap {
    dim: usize,
    vertices: Vec<Configuration>,
    edges: Vec<EdgeRecord>,
    weights: Vec<ExtValue>,
    capacities: Vec<ExtValue>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
    query: Option<(VertexId, VertexId)>,
}

impl Roadmap {
    pub fn new(dim: usize) -> Self {
        Roadmap {
            dim,
            vertices: Vec::new(),
            edges: Vec::new(),
            weights: Vec::new(),
            capacities: Vec::new(),
            adjacency: Vec::new(),
            index: HashMap::new(),
            query: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self, config: Configuration) -> Result<VertexId> {
        if config.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: config.dim(),
            });
        }
        self.vertices.push(config);
        self.adjacency.push(Vec::new());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, p: f64) -> Result<EdgeId> {
        check_probability(p)?;
        for w in [u, v] {
            if w >= self.vertices.len() {
                return Err(Error::UnknownVertex(w));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.index.contains_key(&key) {
            return Err(Error::DuplicateEdge(key.0, key.1));
        }
        let id = self.edges.len();
        self.edges.push(EdgeRecord {
            endpoints: key,
            prob: p,
            state: EdgeState::Unknown,
        });
        self.weights.push(weight_from_prob(p)?);
        self.capacities.push(capacity_from_prob(p)?);
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        self.index.insert(key, id);
        Ok(id)
    }

    pub fn vertex(&self, v: VertexId) -> &Configuration {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Configuration] {
        &self.vertices
    }

    /// Endpoints `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e].endpoints
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|r| r.endpoints).collect()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn prior(&self, e: EdgeId) -> f64 {
        self.edges[e].prob
    }

    /// Replaces the prior of an unevaluated edge and recomputes its values.
    pub fn set_prior(&mut self, e: EdgeId, p: f64) -> Result<()> {
        let record = self.edges.get_mut(e).ok_or(Error::UnknownEdge(e))?;
        if record.state != EdgeState::Unknown {
            return Err(Error::AlreadyEvaluated(e));
        }
        self.weights[e] = weight_from_prob(p)?;
        self.capacities[e] = capacity_from_prob(p)?;
        record.prob = p;
        Ok(())
    }

    pub fn weight(&self, e: EdgeId) -> ExtValue {
        self.weights[e]
    }

    pub fn capacity(&self, e: EdgeId) -> ExtValue {
        self.capacities[e]
    }

    pub fn weights(&self) -> &[ExtValue] {
        &self.weights
    }

    pub fn capacities(&self) -> &[ExtValue] {
        &self.capacities
    }

    /// Scratch access to the capacities. Cut-edge selection temporarily
    /// overrides entries here; [`crate::ipc::reset_edge_values`] restores them.
    pub fn capacities_mut(&mut self) -> &mut [ExtValue] {
        &mut self.capacities
    }

    pub fn state(&self, e: EdgeId) -> EdgeState {
        self.edges[e].state
    }

    /// Status known without an oracle call: evaluated edges, plus edges
    /// whose prior is exactly 0 or 1.
    pub fn known_status(&self, e: EdgeId) -> Option<EdgeStatus> {
        let record = &self.edges[e];
        match record.state {
            EdgeState::Evaluated(s) => Some(s),
            EdgeState::Unknown if record.prob == 1.0 => Some(EdgeStatus::Free),
            EdgeState::Unknown if record.prob == 0.0 => Some(EdgeStatus::Collision),
            EdgeState::Unknown => None,
        }
    }

    /// True when the edge still needs an oracle call to learn its status.
    pub fn needs_evaluation(&self, e: EdgeId) -> bool {
        self.known_status(e).is_none()
    }

    pub fn unknown_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|r| r.state == EdgeState::Unknown)
            .count()
    }

    /// Stores an evaluation outcome and pins the edge's weight and capacity.
    pub fn record_evaluation(&mut self, e: EdgeId, status: EdgeStatus) -> Result<()> {
        let record = self.edges.get_mut(e).ok_or(Error::UnknownEdge(e))?;
        if record.state != EdgeState::Unknown {
            return Err(Error::AlreadyEvaluated(e));
        }
        record.state = EdgeState::Evaluated(status);
        let (w, c) = match status {
            EdgeStatus::Free => (ExtValue::ZERO, ExtValue::Inf),
            EdgeStatus::Collision => (ExtValue::Inf, ExtValue::ZERO),
        };
        self.weights[e] = w;
        self.capacities[e] = c;
        Ok(())
    }

    /// Capacity implied by the edge's current knowledge, ignoring any
    /// temporary override.
    pub fn base_capacity(&self, e: EdgeId) -> ExtValue {
        match self.edges[e].state {
            EdgeState::Evaluated(EdgeStatus::Free) => ExtValue::Inf,
            EdgeState::Evaluated(EdgeStatus::Collision) => ExtValue::ZERO,
            EdgeState::Unknown => capacity_from_prob(self.edges[e].prob)
                .expect("stored priors are validated on insertion"),
        }
    }

    pub fn start(&self) -> Option<VertexId> {
        self.query.map(|q| q.0)
    }

    pub fn goal(&self) -> Option<VertexId> {
        self.query.map(|q| q.1)
    }

    pub fn query(&self) -> Result<(VertexId, VertexId)> {
        self.query.ok_or(Error::NoQuery)
    }

    pub fn set_query(&mut self, start: VertexId, goal: VertexId) -> Result<()> {
        for v in [start, goal] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(v));
            }
        }
        self.query = Some((start, goal));
        Ok(())
    }

    /// Connects `start` and `goal` to the roadmap.
    ///
    /// An endpoint that coincides with an existing vertex reuses it.
    /// Otherwise a new vertex is added and joined to the first of its
    /// [`ATTACH_CANDIDATES`] nearest vertices whose straight segment the
    /// checker reports as free; that edge gets `p = 1`. The roadmap is left
    /// untouched when either endpoint cannot be attached.
    pub fn attach_query(
        &mut self,
        start: Configuration,
        goal: Configuration,
        checker: &impl SegmentChecker,
    ) -> Result<QueryAttachment> {
        if self.vertices.is_empty() {
            return Err(Error::contract("cannot attach a query to an empty roadmap"));
        }
        let start_plan = self.plan_attachment(&start, checker, "start")?;
        let goal_plan = if goal == start {
            None
        } else {
            Some(self.plan_attachment(&goal, checker, "goal")?)
        };

        let mut new_edges = Vec::new();
        let s = self.apply_attachment(start, start_plan, &mut new_edges)?;
        let g = match goal_plan {
            Some(plan) => self.apply_attachment(goal, plan, &mut new_edges)?,
            None => s,
        };
        self.query = Some((s, g));
        Ok(QueryAttachment {
            start: s,
            goal: g,
            new_edges,
        })
    }

    fn plan_attachment(
        &self,
        config: &Configuration,
        checker: &impl SegmentChecker,
        which: &'static str,
    ) -> Result<Attachment> {
        if config.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: config.dim(),
            });
        }
        let mut by_distance: Vec<(f64, VertexId)> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.distance_squared(config), i))
            .collect();
        by_distance.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if let Some(&(d, v)) = by_distance.first() {
            if d == 0.0 {
                return Ok(Attachment::Existing(v));
            }
        }
        for &(_, v) in by_distance.iter().take(ATTACH_CANDIDATES) {
            if checker.segment_status(config, &self.vertices[v])? == EdgeStatus::Free {
                return Ok(Attachment::Connect(v));
            }
        }
        Err(Error::QueryNotEmbeddable(which))
    }

    fn apply_attachment(
        &mut self,
        config: Configuration,
        plan: Attachment,
        new_edges: &mut Vec<EdgeId>,
    ) -> Result<VertexId> {
        match plan {
            Attachment::Existing(v) => Ok(v),
            Attachment::Connect(u) => {
                let v = self.add_vertex(config)?;
                new_edges.push(self.add_edge(v, u, 1.0)?);
                Ok(v)
            }
        }
    }

    /// Writes the roadmap in the line-oriented text format:
    /// `dim <d> vertices <n> edges <m>`, then `n` coordinate lines, then
    /// `m` lines `u v p`.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        writeln!(
            w,
            "dim {} vertices {} edges {}",
            self.dim,
            self.vertices.len(),
            self.edges.len()
        )?;
        for v in &self.vertices {
            let line: Vec<String> = v.coords().iter().map(|c| c.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        for r in &self.edges {
            writeln!(w, "{} {} {}", r.endpoints.0, r.endpoints.1, r.prob)?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Roadmap> {
        let mut lines = r.lines().enumerate();
        let mut next = |what: &str| -> Result<(usize, String)> {
            for (i, line) in lines.by_ref() {
                let line = line?;
                if !line.trim().is_empty() {
                    return Ok((i + 1, line));
                }
            }
            Err(Error::parse(0, format!("unexpected end of file, expected {what}")))
        };

        let (ln, header) = next("header")?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || Error::parse(ln, "expected `dim <d> vertices <n> edges <m>`");
        if tokens.len() != 6 || tokens[0] != "dim" || tokens[2] != "vertices" || tokens[4] != "edges"
        {
            return Err(bad_header());
        }
        let parse_count = |t: &str| t.parse::<usize>().map_err(|_| bad_header());
        let dim = parse_count(tokens[1])?;
        let n = parse_count(tokens[3])?;
        let m = parse_count(tokens[5])?;

        let mut roadmap = Roadmap::new(dim);
        for _ in 0..n {
            let (ln, line) = next("vertex line")?;
            let coords = line
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(ln, e.to_string()))?;
            let config = Configuration::new(coords).map_err(|e| Error::parse(ln, e.to_string()))?;
            roadmap
                .add_vertex(config)
                .map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        for _ in 0..m {
            let (ln, line) = next("edge line")?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err(Error::parse(ln, "expected `u v p`"));
            }
            let u: VertexId = tokens[0].parse().map_err(|_| Error::parse(ln, "bad vertex index"))?;
            let v: VertexId = tokens[1].parse().map_err(|_| Error::parse(ln, "bad vertex index"))?;
            let p: f64 = tokens[2].parse().map_err(|_| Error::parse(ln, "bad probability"))?;
            if u >= v {
                return Err(Error::parse(ln, "edge endpoints must satisfy u < v"));
            }
            roadmap
                .add_edge(u, v, p)
                .map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        Ok(roadmap)
    }
}

#[derive(Debug, Clone, Copy)]
enum Attachment {
    Existing(VertexId),
    Connect(VertexId),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{ConvexObstacle, Scene};

    fn approx(a: ExtValue, b: f64) -> bool {
        matches!(a, ExtValue::Finite(x) if (x - b).abs() < 1e-12)
    }

    #[test]
    fn transforms_at_the_boundaries() {
        assert_eq!(weight_from_prob(1.0).unwrap(), ExtValue::ZERO);
        assert_eq!(weight_from_prob(0.0).unwrap(), ExtValue::Inf);
        assert_eq!(capacity_from_prob(0.0).unwrap(), ExtValue::ZERO);
        assert_eq!(capacity_from_prob(1.0).unwrap(), ExtValue::Inf);
    }

    #[test]
    fn transforms_at_one_half() {
        // ln(2)
        assert!(approx(weight_from_prob(0.5).unwrap(), std::f64::consts::LN_2));
        assert!(approx(capacity_from_prob(0.5).unwrap(), std::f64::consts::LN_2));
    }

    #[test]
    fn transforms_reject_out_of_range() {
        assert!(matches!(weight_from_prob(-0.1), Err(Error::ProbabilityDomain(_))));
        assert!(matches!(capacity_from_prob(1.5), Err(Error::ProbabilityDomain(_))));
        assert!(weight_from_prob(f64::NAN).is_err());
    }

    #[test]
    fn ext_value_ordering_and_sum() {
        assert!(ExtValue::Inf > ExtValue::Finite(1e300));
        assert_eq!(ExtValue::Inf + ExtValue::Finite(2.0), ExtValue::Inf);
        assert_eq!(ExtValue::Finite(1.0) + ExtValue::Finite(2.0), ExtValue::Finite(3.0));
    }

    fn line_roadmap() -> Roadmap {
        let mut r = Roadmap::new(2);
        for x in [0.0, 1.0, 2.0] {
            r.add_vertex([x, 0.0].into()).unwrap();
        }
        r.add_edge(0, 1, 0.6).unwrap();
        r.add_edge(1, 2, 0.35).unwrap();
        r
    }

    #[test]
    fn record_free_and_collision() {
        let mut r = line_roadmap();
        r.record_evaluation(0, EdgeStatus::Free).unwrap();
        assert_eq!(r.weight(0), ExtValue::ZERO);
        assert_eq!(r.capacity(0), ExtValue::Inf);
        assert_eq!(r.state(0), EdgeState::Evaluated(EdgeStatus::Free));

        r.record_evaluation(1, EdgeStatus::Collision).unwrap();
        assert_eq!(r.weight(1), ExtValue::Inf);
        assert_eq!(r.capacity(1), ExtValue::ZERO);
    }

    #[test]
    fn re_evaluation_is_rejected() {
        let mut r = line_roadmap();
        r.record_evaluation(0, EdgeStatus::Free).unwrap();
        assert!(matches!(
            r.record_evaluation(0, EdgeStatus::Free),
            Err(Error::AlreadyEvaluated(0))
        ));
    }

    #[test]
    fn graph_stays_simple() {
        let mut r = line_roadmap();
        assert!(matches!(r.add_edge(1, 0, 0.5), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(r.add_edge(2, 2, 0.5), Err(Error::SelfLoop(2))));
        assert!(matches!(r.add_edge(0, 9, 0.5), Err(Error::UnknownVertex(9))));
        assert!(matches!(
            r.add_vertex(Configuration::new(vec![0.0]).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn deterministic_priors_are_known() {
        let mut r = line_roadmap();
        r.set_prior(0, 1.0).unwrap();
        r.set_prior(1, 0.0).unwrap();
        assert_eq!(r.known_status(0), Some(EdgeStatus::Free));
        assert_eq!(r.known_status(1), Some(EdgeStatus::Collision));
    }

    fn open_scene() -> Scene {
        Scene::new(vec![(0.0, 10.0), (0.0, 10.0)])
    }

    #[test]
    fn attach_reuses_coincident_vertex() {
        let mut r = line_roadmap();
        let a = r
            .attach_query([0.0, 0.0].into(), [2.0, 0.0].into(), &open_scene())
            .unwrap();
        assert_eq!((a.start, a.goal), (0, 2));
        assert!(a.new_edges.is_empty());
        assert_eq!(r.vertex_count(), 3);
    }

    #[test]
    fn attach_adds_deterministic_connector() {
        let mut r = line_roadmap();
        let a = r
            .attach_query([0.1, 0.5].into(), [2.0, 0.0].into(), &open_scene())
            .unwrap();
        assert_eq!(a.start, 3);
        assert_eq!(a.new_edges.len(), 1);
        let e = a.new_edges[0];
        assert_eq!(r.endpoints(e), (0, 3));
        assert_eq!(r.prior(e), 1.0);
        assert_eq!(r.weight(e), ExtValue::ZERO);
        assert_eq!(r.capacity(e), ExtValue::Inf);
    }

    #[test]
    fn attach_rejects_enclosed_start() {
        let mut scene = open_scene();
        scene
            .add_obstacle(
                ConvexObstacle::aabb(vec![(4.0, 6.0), (4.0, 6.0)]).unwrap(),
                false,
            )
            .unwrap();
        let mut r = line_roadmap();
        let before = r.vertex_count();
        let err = r
            .attach_query([5.0, 5.0].into(), [2.0, 0.0].into(), &scene)
            .unwrap_err();
        assert!(matches!(err, Error::QueryNotEmbeddable("start")));
        assert_eq!(r.vertex_count(), before);
    }

    #[test]
    fn file_format_round_trip() {
        let mut r = line_roadmap();
        r.set_prior(1, 0.123_456_789).unwrap();
        let mut buf = Vec::new();
        r.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("dim 2 vertices 3 edges 2\n"));
        let back = Roadmap::read_from(&buf[..]).unwrap();
        assert_eq!(back.edge_list(), r.edge_list());
        assert_eq!(back.prior(1), 0.123_456_789);
        assert_eq!(back.vertices(), r.vertices());
    }

    #[test]
    fn file_format_reports_line_numbers() {
        let text = "dim 2 vertices 2 edges 1\n0 0\n1 1\n1 0 0.5\n";
        match Roadmap::read_from(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}
