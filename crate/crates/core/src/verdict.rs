//! Terminal certificates and per-run counters shared by every algorithm.

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::oracle::EvaluationLedger;
use crate::roadmap::{EdgeStatus, Roadmap};
use crate::search::{reachable_from, CandidateCut, CandidatePath};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterationStats {
    pub n_iterations: usize,
    pub n_evaluations: usize,
    pub n_cut_calls: usize,
    pub n_path_calls: usize,
    /// Largest vertex count handed to a single cut search.
    pub max_cut_input_vertices: usize,
    /// Vertex count of every cut search, in call order.
    pub cut_input_sizes: Vec<usize>,
    /// New oracle calls made in each iteration.
    pub evaluations_per_iteration: Vec<usize>,
    /// Algorithm time, oracle calls excluded.
    pub wall_time: Duration,
}

impl IterationStats {
    pub(crate) fn record_cut_call(&mut self, input_vertices: usize) {
        self.n_cut_calls += 1;
        self.cut_input_sizes.push(input_vertices);
        self.max_cut_input_vertices = self.max_cut_input_vertices.max(input_vertices);
    }

    pub fn wall_time_us(&self) -> u64 {
        self.wall_time.as_micros() as u64
    }
}

/// Counters and clock for one run in progress. Time accumulates only
/// while the clock is running, so a caller stepping a run can inspect it
/// between iterations without inflating the wall time.
#[derive(Debug)]
pub(crate) struct RunClock {
    busy: Duration,
    since: Option<Instant>,
    iteration_start_evals: usize,
}

impl RunClock {
    pub(crate) fn start() -> Self {
        RunClock {
            busy: Duration::ZERO,
            since: Some(Instant::now()),
            iteration_start_evals: 0,
        }
    }

    pub(crate) fn resume(&mut self) {
        if self.since.is_none() {
            self.since = Some(Instant::now());
        }
    }

    pub(crate) fn pause(&mut self) {
        if let Some(t0) = self.since.take() {
            self.busy += t0.elapsed();
        }
    }

    pub(crate) fn begin_iteration(&mut self, stats: &mut IterationStats, ledger: &EvaluationLedger) {
        stats.n_iterations += 1;
        self.iteration_start_evals = ledger.n_evaluations();
    }

    pub(crate) fn end_iteration(&mut self, stats: &mut IterationStats, ledger: &EvaluationLedger) {
        stats
            .evaluations_per_iteration
            .push(ledger.n_evaluations() - self.iteration_start_evals);
        self.iteration_start_evals = ledger.n_evaluations();
    }

    /// Brings the stats up to date; the wall time excludes oracle calls.
    pub(crate) fn sync(&mut self, stats: &mut IterationStats, ledger: &EvaluationLedger) {
        let running = self.since.is_some();
        self.pause();
        stats.n_evaluations = ledger.n_evaluations();
        stats.wall_time = self.busy.saturating_sub(ledger.oracle_time());
        if running {
            self.resume();
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// A start-to-goal path of confirmed-free edges.
    Feasible(CandidatePath),
    /// Confirmed-collision edges whose removal disconnects start and goal.
    Infeasible(CandidateCut),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub certificate: Certificate,
    pub stats: IterationStats,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self.certificate, Certificate::Feasible(_))
    }

    pub fn label(&self) -> &'static str {
        if self.is_feasible() {
            "FEASIBLE"
        } else {
            "INFEASIBLE"
        }
    }

    /// Checks the certificate against the roadmap's known edge statuses.
    pub fn validate(&self, roadmap: &Roadmap) -> Result<()> {
        match &self.certificate {
            Certificate::Feasible(path) => validate_path(roadmap, path),
            Certificate::Infeasible(cut) => validate_cut(roadmap, cut),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = match &self.certificate {
            Certificate::Feasible(p) => p.len(),
            Certificate::Infeasible(c) => c.len(),
        };
        write!(
            f,
            "{} (certificate of {} edges, {} evaluations, {} iterations)",
            self.label(),
            size,
            self.stats.n_evaluations,
            self.stats.n_iterations
        )
    }
}

fn validate_path(roadmap: &Roadmap, path: &CandidatePath) -> Result<()> {
    let (s, g) = roadmap.query()?;
    if path.vertices.first() != Some(&s) || path.vertices.last() != Some(&g) {
        return Err(Error::contract("path does not join start and goal"));
    }
    if path.vertices.len() != path.edges.len() + 1 {
        return Err(Error::contract("path vertex and edge counts disagree"));
    }
    for (i, &e) in path.edges.iter().enumerate() {
        let (a, b) = roadmap.endpoints(e);
        let (x, y) = (path.vertices[i], path.vertices[i + 1]);
        if (a, b) != (x.min(y), x.max(y)) {
            return Err(Error::contract(format!("path edge {e} does not join {x} and {y}")));
        }
        if roadmap.known_status(e) != Some(EdgeStatus::Free) {
            return Err(Error::contract(format!("path edge {e} is not confirmed free")));
        }
    }
    Ok(())
}

fn validate_cut(roadmap: &Roadmap, cut: &CandidateCut) -> Result<()> {
    let (s, g) = roadmap.query()?;
    let mut in_cut = vec![false; roadmap.edge_count()];
    for &e in &cut.edges {
        if roadmap.known_status(e) != Some(EdgeStatus::Collision) {
            return Err(Error::contract(format!("cut edge {e} is not confirmed in collision")));
        }
        in_cut[e] = true;
    }
    if reachable_from(roadmap, s, |e| !in_cut[e])[g] {
        return Err(Error::contract("removing the cut leaves start and goal connected"));
    }
    Ok(())
}
