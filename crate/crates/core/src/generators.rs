//! Roadmap construction, ground-truth labelling and prior calibration.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::{bundled_scene, Scene, TableOracle};
use crate::roadmap::{Configuration, EdgeStatus, Roadmap, VertexId};

/// Prior assigned to edges before calibration.
const UNCALIBRATED_PRIOR: f64 = 0.5;

fn sample(scene: &Scene, rng: &mut ChaCha8Rng) -> Configuration {
    let coords = scene
        .bounds()
        .iter()
        .map(|&(lo, hi)| if hi > lo { rng.random_range(lo..hi) } else { lo })
        .collect();
    Configuration::new(coords).expect("samples lie inside finite bounds")
}

/// Every vertex's other vertices sorted by distance, index breaking ties.
fn sorted_neighbors(points: &[Configuration]) -> Vec<Vec<VertexId>> {
    (0..points.len())
        .map(|i| {
            let mut others: Vec<(f64, VertexId)> = (0..points.len())
                .filter(|&j| j != i)
                .map(|j| (points[i].distance_squared(&points[j]), j))
                .collect();
            others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            others.into_iter().map(|(_, j)| j).collect()
        })
        .collect()
}

fn knn_edges(neighbors: &[Vec<VertexId>], k: usize) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<(VertexId, VertexId)> = neighbors
        .iter()
        .enumerate()
        .flat_map(|(i, list)| list.iter().take(k).map(move |&j| (i.min(j), i.max(j))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

fn assemble(scene: &Scene, points: Vec<Configuration>, edges: &[(VertexId, VertexId)]) -> Result<Roadmap> {
    let mut r = Roadmap::new(scene.dim());
    for p in points {
        r.add_vertex(p)?;
    }
    for &(u, v) in edges {
        r.add_edge(u, v, UNCALIBRATED_PRIOR)?;
    }
    Ok(r)
}

fn check_scene_dim(scene: &Scene) -> Result<()> {
    if scene.dim() < 2 {
        return Err(Error::contract("scenes need at least two dimensions"));
    }
    Ok(())
}

/// Probabilistic roadmap: `n_vertices` uniform samples over the scene
/// bounds (obstacle interiors included), each joined to its
/// `k_neighbors` nearest samples. Edges carry the placeholder prior 0.5.
pub fn prm(scene: &Scene, n_vertices: usize, k_neighbors: usize, seed: u64) -> Result<Roadmap> {
    check_scene_dim(scene)?;
    if n_vertices < 2 || k_neighbors < 1 {
        return Err(Error::contract("prm needs at least 2 vertices and 1 neighbour"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Configuration> = (0..n_vertices).map(|_| sample(scene, &mut rng)).collect();
    let edges = knn_edges(&sorted_neighbors(&points), k_neighbors);
    assemble(scene, points, &edges)
}

/// [`prm`] with the neighbour count chosen by binary search so that the
/// edge count comes as close as possible to `n_edges` (the smaller `k`
/// wins ties). Returns the roadmap and the `k` used.
pub fn prm_with_edge_target(
    scene: &Scene,
    n_vertices: usize,
    n_edges: usize,
    seed: u64,
) -> Result<(Roadmap, usize)> {
    check_scene_dim(scene)?;
    if n_vertices < 2 {
        return Err(Error::contract("prm needs at least 2 vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Configuration> = (0..n_vertices).map(|_| sample(scene, &mut rng)).collect();
    let neighbors = sorted_neighbors(&points);
    let count = |k: usize| knn_edges(&neighbors, k).len();

    // smallest k reaching the target, then compare with k - 1
    let (mut lo, mut hi) = (1, n_vertices - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if count(mid) >= n_edges {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let mut k = lo;
    if k > 1 && n_edges.abs_diff(count(k - 1)) <= n_edges.abs_diff(count(k)) {
        k -= 1;
    }
    let edges = knn_edges(&neighbors, k);
    Ok((assemble(scene, points, &edges)?, k))
}

/// A `rows x cols` 4-connected lattice over the first two axes, placed at
/// cell centres. Further axes sit at the middle of their interval.
pub fn grid(scene: &Scene, rows: usize, cols: usize) -> Result<Roadmap> {
    check_scene_dim(scene)?;
    if rows < 2 || cols < 2 {
        return Err(Error::contract("grid needs at least 2 rows and 2 columns"));
    }
    let b = scene.bounds();
    let mut points = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut coords: Vec<f64> = b.iter().map(|&(lo, hi)| (lo + hi) / 2.0).collect();
            coords[0] = b[0].0 + (b[0].1 - b[0].0) * (c as f64 + 0.5) / cols as f64;
            coords[1] = b[1].0 + (b[1].1 - b[1].0) * (r as f64 + 0.5) / rows as f64;
            points.push(Configuration::new(coords)?);
        }
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    assemble(scene, points, &edges)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: Vec::new() }
    }

    fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Visibility-based sparse roadmap. A free sample that sees no guard
/// within `visibility_radius` becomes a guard; one that sees guards from
/// two or more components becomes a connector joined to the nearest
/// visible guard of each component; anything else is discarded.
/// Visibility ignores toggle obstacles so one roadmap serves both scene
/// variants.
pub fn sparse_roadmap(
    scene: &Scene,
    n_attempts: usize,
    visibility_radius: f64,
    seed: u64,
) -> Result<Roadmap> {
    check_scene_dim(scene)?;
    if n_attempts < 1 || visibility_radius <= 0.0 {
        return Err(Error::contract("sparse roadmap needs attempts and a positive radius"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Configuration> = Vec::new();
    let mut guards: Vec<VertexId> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut components = UnionFind::new();
    let r2 = visibility_radius * visibility_radius;

    for _ in 0..n_attempts {
        let q = sample(scene, &mut rng);
        if scene.evaluate_segment_base(&q, &q)? == EdgeStatus::Collision {
            continue;
        }
        let mut visible: Vec<(f64, VertexId)> = Vec::new();
        for &g in &guards {
            let d = q.distance_squared(&points[g]);
            if d <= r2 && scene.evaluate_segment_base(&q, &points[g])? == EdgeStatus::Free {
                visible.push((d, g));
            }
        }
        if visible.is_empty() {
            points.push(q);
            components.push();
            guards.push(points.len() - 1);
            continue;
        }
        visible.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut links: Vec<VertexId> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for &(_, g) in &visible {
            let root = components.find(g);
            if !roots.contains(&root) {
                roots.push(root);
                links.push(g);
            }
        }
        if links.len() < 2 {
            continue;
        }
        points.push(q);
        let c = points.len() - 1;
        components.push();
        for g in links {
            edges.push((g.min(c), g.max(c)));
            components.union(c, g);
        }
    }
    assemble(scene, points, &edges)
}

/// Parameters of the noisy prior: collision edges draw from `U(a, b)`,
/// free edges from `U(c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            a: 0.3,
            b: 0.4,
            c: 0.6,
            d: 0.7,
        }
    }
}

impl NoiseModel {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(0.0 <= a && a < b && b <= c && c < d && d <= 1.0) {
            return Err(Error::contract(format!(
                "noise intervals must satisfy 0 <= a < b <= c < d <= 1, got {a} {b} {c} {d}"
            )));
        }
        Ok(NoiseModel { a, b, c, d })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorMode {
    /// 1 for free edges, 0 for collision edges.
    Perfect,
    Noisy(NoiseModel),
    /// 0.5 everywhere.
    Uninformed,
}

impl PriorMode {
    pub fn name(&self) -> &'static str {
        match self {
            PriorMode::Perfect => "perfect",
            PriorMode::Noisy(_) => "noisy",
            PriorMode::Uninformed => "none",
        }
    }

    /// Rank by how little the prior says about the truth.
    pub fn noise_level(&self) -> usize {
        match self {
            PriorMode::Perfect => 0,
            PriorMode::Noisy(_) => 1,
            PriorMode::Uninformed => 2,
        }
    }
}

impl fmt::Display for PriorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PriorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "perfect" => Ok(PriorMode::Perfect),
            "noisy" => Ok(PriorMode::Noisy(NoiseModel::default())),
            "none" => Ok(PriorMode::Uninformed),
            other => Err(Error::contract(format!("unknown prior mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorCalibration {
    pub mode: PriorMode,
    pub seed: u64,
}

/// Labels every edge against the scene's active obstacles and assigns
/// priors according to the calibration. Returns the truth in edge order.
/// Only unevaluated edges can be relabelled.
pub fn label_and_calibrate(
    roadmap: &mut Roadmap,
    scene: &Scene,
    calibration: PriorCalibration,
) -> Result<Vec<EdgeStatus>> {
    let mut rng = ChaCha8Rng::seed_from_u64(calibration.seed);
    let mut truth = Vec::with_capacity(roadmap.edge_count());
    for e in 0..roadmap.edge_count() {
        let (u, v) = roadmap.endpoints(e);
        let status = scene.evaluate_segment(roadmap.vertex(u), roadmap.vertex(v))?;
        let p = match (calibration.mode, status) {
            (PriorMode::Perfect, EdgeStatus::Free) => 1.0,
            (PriorMode::Perfect, EdgeStatus::Collision) => 0.0,
            (PriorMode::Noisy(m), EdgeStatus::Collision) => rng.random_range(m.a..m.b),
            (PriorMode::Noisy(m), EdgeStatus::Free) => rng.random_range(m.c..m.d),
            (PriorMode::Uninformed, _) => UNCALIBRATED_PRIOR,
        };
        roadmap.set_prior(e, p)?;
        truth.push(status);
    }
    Ok(truth)
}

/// Writes `u v status p` per edge.
pub fn write_truth(mut w: impl Write, roadmap: &Roadmap, truth: &[EdgeStatus]) -> Result<()> {
    if truth.len() != roadmap.edge_count() {
        return Err(Error::contract("one truth entry per edge required"));
    }
    for (e, status) in truth.iter().enumerate() {
        let (u, v) = roadmap.endpoints(e);
        writeln!(w, "{u} {v} {status} {}", roadmap.prior(e))?;
    }
    Ok(())
}

/// One line of a truth file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthEntry {
    pub u: VertexId,
    pub v: VertexId,
    pub status: EdgeStatus,
    pub prior: f64,
}

pub fn read_truth(r: impl BufRead) -> Result<Vec<TruthEntry>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let n = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = t.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::parse(n, "expected `u v status p`"));
        }
        let u = f[0].parse().map_err(|_| Error::parse(n, "bad vertex index"))?;
        let v = f[1].parse().map_err(|_| Error::parse(n, "bad vertex index"))?;
        let status = f[2].parse().map_err(|_| Error::parse(n, "status must be FREE or COLLISION"))?;
        let prior: f64 = f[3].parse().map_err(|_| Error::parse(n, "bad probability"))?;
        if !(0.0..=1.0).contains(&prior) {
            return Err(Error::parse(n, "probability outside [0, 1]"));
        }
        out.push(TruthEntry { u, v, status, prior });
    }
    Ok(out)
}

/// Applies the priors of a truth file to `roadmap` and returns the truth
/// as an oracle. Entries must match the roadmap's edges in order.
pub fn apply_truth(roadmap: &mut Roadmap, entries: &[TruthEntry]) -> Result<TableOracle> {
    if entries.len() != roadmap.edge_count() {
        return Err(Error::contract(format!(
            "{} truth entries for {} edges",
            entries.len(),
            roadmap.edge_count()
        )));
    }
    let mut statuses = Vec::with_capacity(entries.len());
    for (e, t) in entries.iter().enumerate() {
        if roadmap.endpoints(e) != (t.u.min(t.v), t.u.max(t.v)) {
            return Err(Error::MissingTruth(t.u, t.v));
        }
        roadmap.set_prior(e, t.prior)?;
        statuses.push(t.status);
    }
    TableOracle::from_statuses(roadmap, &statuses)
}

/// Whether start and goal are joined by free edges, by union-find.
pub fn ground_truth_feasible(roadmap: &Roadmap, truth: &[EdgeStatus]) -> Result<bool> {
    let (s, g) = roadmap.query()?;
    let mut uf = UnionFind::new();
    for _ in 0..roadmap.vertex_count() {
        uf.push();
    }
    for (e, &status) in truth.iter().enumerate() {
        if status == EdgeStatus::Free {
            let (u, v) = roadmap.endpoints(e);
            uf.union(u, v);
        }
    }
    Ok(uf.find(s) == uf.find(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoadmapKind {
    Prm,
    Grid,
    Sparse,
}

impl RoadmapKind {
    pub fn name(self) -> &'static str {
        match self {
            RoadmapKind::Prm => "prm",
            RoadmapKind::Grid => "grid",
            RoadmapKind::Sparse => "spars",
        }
    }
}

impl FromStr for RoadmapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "prm" => Ok(RoadmapKind::Prm),
            "grid" => Ok(RoadmapKind::Grid),
            "spars" | "sparse" | "spars-lite" => Ok(RoadmapKind::Sparse),
            other => Err(Error::contract(format!("unknown roadmap type `{other}`"))),
        }
    }
}

/// Everything needed to build one benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub scene: String,
    pub kind: RoadmapKind,
    /// Target edge count for PRM, attempt budget for the sparse roadmap.
    pub size: usize,
    /// Vertex count for PRM (default `size / 4`) and grid.
    pub n_vertices: Option<usize>,
    /// Fixed neighbour count for PRM instead of an edge target.
    pub k_neighbors: Option<usize>,
    pub prior: PriorMode,
    /// Toggle obstacles active.
    pub blocked: bool,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn id(&self) -> String {
        let shape = match (self.kind, self.k_neighbors) {
            (RoadmapKind::Prm, None) => format!("e{}", self.size),
            (RoadmapKind::Prm, Some(k)) => format!("v{}k{k}", self.size),
            (kind, _) => format!("{}{}", kind.name(), self.size),
        };
        format!(
            "{}-{}-{}-{}-s{}",
            self.scene,
            shape,
            self.prior,
            if self.blocked { "infeasible" } else { "feasible" },
            self.seed
        )
    }
}

/// A generated problem: the scene variant, the calibrated roadmap with its
/// query attached, and the ground truth of every edge.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub scene: Scene,
    pub roadmap: Roadmap,
    pub truth: Vec<EdgeStatus>,
}

impl Instance {
    pub fn oracle(&self) -> TableOracle {
        TableOracle::from_statuses(&self.roadmap, &self.truth).expect("truth covers every edge")
    }

    pub fn feasible(&self) -> bool {
        ground_truth_feasible(&self.roadmap, &self.truth).expect("query attached")
    }
}

/// Attempts before giving up on attaching the query to fresh roadmaps.
const ATTACH_RETRIES: u64 = 8;

fn derived_seed(seed: u64, attempt: u64) -> u64 {
    seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn build_roadmap(scene: &Scene, spec: &InstanceSpec, seed: u64) -> Result<Roadmap> {
    match spec.kind {
        RoadmapKind::Prm => {
            let n = spec.n_vertices.unwrap_or((spec.size / 4).max(2));
            match spec.k_neighbors {
                Some(k) => prm(scene, n, k, seed),
                None => Ok(prm_with_edge_target(scene, n, spec.size, seed)?.0),
            }
        }
        RoadmapKind::Grid => {
            let n = spec.n_vertices.unwrap_or((spec.size / 2).max(4));
            let side = (n as f64).sqrt().round().max(2.0) as usize;
            grid(scene, side, side)
        }
        RoadmapKind::Sparse => {
            let diag = scene
                .bounds()
                .iter()
                .map(|(lo, hi)| (hi - lo) * (hi - lo))
                .sum::<f64>()
                .sqrt();
            sparse_roadmap(scene, spec.size, diag / 8.0, seed)
        }
    }
}

/// Builds a bundled-scene instance: roadmap, labels and priors against the
/// chosen scene variant, then the query with its certain connector edges.
/// If the query cannot be attached the roadmap is resampled from a seed
/// derived from the original.
pub fn build_instance(spec: &InstanceSpec) -> Result<Instance> {
    let bundled = bundled_scene(&spec.scene)
        .ok_or_else(|| Error::contract(format!("unknown scene `{}`", spec.scene)))?;
    let scene = bundled.scene.with_toggles(spec.blocked);
    let mut last_err = None;
    for attempt in 0..ATTACH_RETRIES {
        let seed = derived_seed(spec.seed, attempt);
        let mut roadmap = build_roadmap(&scene, spec, seed)?;
        let mut truth = label_and_calibrate(
            &mut roadmap,
            &scene,
            PriorCalibration {
                mode: spec.prior,
                seed: seed.wrapping_add(1),
            },
        )?;
        match roadmap.attach_query(bundled.start.clone(), bundled.goal.clone(), &scene) {
            Ok(att) => {
                truth.extend(att.new_edges.iter().map(|_| EdgeStatus::Free));
                return Ok(Instance {
                    spec: spec.clone(),
                    scene,
                    roadmap,
                    truth,
                });
            }
            Err(e @ Error::QueryNotEmbeddable(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}
