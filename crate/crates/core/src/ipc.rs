//! Iterative path and cut finding over the whole roadmap.
//!
//! Each iteration evaluates the most probable path. If it is blocked, one
//! collision edge on it is forced into the next cut (capacity 0) while the
//! rest of the path is made uncuttable, and the most probable cut is
//! evaluated. A fully free path or a fully blocked cut ends the run.

use crate::error::{Error, Result};
use crate::oracle::{evaluate_edge, EdgeOracle, EvaluationLedger};
use crate::roadmap::{EdgeId, EdgeStatus, ExtValue, Roadmap};
use crate::search::{most_probable_cut, reachable_from, roadmap_path, CandidateCut, CandidatePath};
use crate::verdict::{Certificate, IterationStats, RunClock, Verdict};

/// Evaluates every edge of `path` whose status is still unknown, in path
/// order. Returns true iff the whole path is free.
pub fn evaluate_path_candidate(
    path: &CandidatePath,
    roadmap: &mut Roadmap,
    oracle: &dyn EdgeOracle,
    ledger: &mut EvaluationLedger,
) -> Result<bool> {
    evaluate_edges(&path.edges, roadmap, oracle, ledger)?;
    Ok(path
        .edges
        .iter()
        .all(|&e| roadmap.known_status(e) == Some(EdgeStatus::Free)))
}

/// Evaluates every edge of `cut` whose status is still unknown. Returns
/// true iff every cut edge is in collision.
pub fn evaluate_cut_candidate(
    cut: &CandidateCut,
    roadmap: &mut Roadmap,
    oracle: &dyn EdgeOracle,
    ledger: &mut EvaluationLedger,
) -> Result<bool> {
    evaluate_edges(&cut.edges, roadmap, oracle, ledger)?;
    Ok(cut
        .edges
        .iter()
        .all(|&e| roadmap.known_status(e) == Some(EdgeStatus::Collision)))
}

pub(crate) fn evaluate_edges(
    edges: &[EdgeId],
    roadmap: &mut Roadmap,
    oracle: &dyn EdgeOracle,
    ledger: &mut EvaluationLedger,
) -> Result<()> {
    for &e in edges {
        if roadmap.needs_evaluation(e) {
            evaluate_edge(ledger, oracle, roadmap, e)?;
        }
    }
    Ok(())
}

/// The longest run of consecutive collision edges along `path`, as
/// `(first position, length)`. The earliest run wins ties.
pub fn longest_collision_run(path: &CandidatePath, roadmap: &Roadmap) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut run_start = 0;
    let mut run_len = 0;
    for (i, &e) in path.edges.iter().enumerate() {
        if roadmap.known_status(e) == Some(EdgeStatus::Collision) {
            if run_len == 0 {
                run_start = i;
            }
            run_len += 1;
            if best.is_none_or(|(_, len)| run_len > len) {
                best = Some((run_start, run_len));
            }
        } else {
            run_len = 0;
        }
    }
    best
}

/// Position of the center edge of a run; the lower middle for even lengths.
pub fn run_center(start: usize, len: usize) -> usize {
    start + (len - 1) / 2
}

/// Forces the center of the longest collision run of `path` into the next
/// cut: its capacity becomes 0 and every other path edge gets infinite
/// capacity. Returns the chosen edge.
pub fn choose_cut_edge(path: &CandidatePath, roadmap: &mut Roadmap) -> Result<EdgeId> {
    let (start, len) = longest_collision_run(path, roadmap)
        .ok_or_else(|| Error::contract("path has no collision edge to cut"))?;
    let chosen = path.edges[run_center(start, len)];
    force_cut_edge(path, chosen, roadmap);
    Ok(chosen)
}

pub(crate) fn force_cut_edge(path: &CandidatePath, chosen: EdgeId, roadmap: &mut Roadmap) {
    let caps = roadmap.capacities_mut();
    for &e in &path.edges {
        caps[e] = ExtValue::Inf;
    }
    caps[chosen] = ExtValue::ZERO;
}

/// Restores the capacities of `path` edges from their current knowledge:
/// 0 for collision, infinite for free, the prior's capacity otherwise.
pub fn reset_edge_values(path: &CandidatePath, roadmap: &mut Roadmap) {
    for &e in &path.edges {
        let c = roadmap.base_capacity(e);
        roadmap.capacities_mut()[e] = c;
    }
}

/// The cut formed by every edge leaving the set reachable from the start
/// over edges of finite weight. All of its edges are known collisions.
pub fn frontier_cut(roadmap: &Roadmap) -> Result<CandidateCut> {
    let (s, g) = roadmap.query()?;
    let reach = reachable_from(roadmap, s, |e| !roadmap.weight(e).is_inf());
    if reach[g] {
        return Err(Error::contract("goal is reachable over finite-weight edges"));
    }
    Ok(CandidateCut::from_vertex_set(
        &roadmap.edge_list(),
        roadmap.capacities(),
        &reach,
    ))
}

/// Outcome of the path rounds that open an iteration.
pub(crate) enum PathRounds {
    Done(Certificate),
    /// The last evaluated path, which contains a collision edge.
    Blocked(CandidatePath),
}

/// Up to `rounds` cycles of pathfinding and evaluation. `on_path` sees each
/// evaluated path.
pub(crate) fn path_rounds(
    rounds: usize,
    roadmap: &mut Roadmap,
    oracle: &dyn EdgeOracle,
    ledger: &mut EvaluationLedger,
    stats: &mut IterationStats,
    mut on_path: impl FnMut(&CandidatePath, &Roadmap) -> Result<()>,
) -> Result<PathRounds> {
    let mut last = None;
    for _ in 0..rounds {
        stats.n_path_calls += 1;
        let Some(path) = roadmap_path(roadmap)? else {
            return Ok(PathRounds::Done(Certificate::Infeasible(frontier_cut(roadmap)?)));
        };
        let free = evaluate_path_candidate(&path, roadmap, oracle, ledger)?;
        on_path(&path, roadmap)?;
        if free {
            return Ok(PathRounds::Done(Certificate::Feasible(path)));
        }
        last = Some(path);
    }
    last.map(PathRounds::Blocked)
        .ok_or_else(|| Error::contract("paths_per_iteration must be at least 1"))
}

/// Runs iterative path and cut finding until a certificate is found.
///
/// With `paths_per_iteration = n`, each iteration performs up to `n` path
/// rounds before its cut round; the edge forced into the cut comes from
/// the last evaluated path.
pub fn run_ipc(
    roadmap: &mut Roadmap,
    oracle: &dyn EdgeOracle,
    paths_per_iteration: usize,
) -> Result<Verdict> {
    let (s, g) = roadmap.query()?;
    let mut clock = RunClock::start();
    let mut ledger = EvaluationLedger::new();
    let mut stats = IterationStats::default();
    let edge_list = roadmap.edge_list();
    let n = roadmap.vertex_count();

    let certificate = loop {
        clock.begin_iteration(&mut stats, &ledger);
        let path = match path_rounds(
            paths_per_iteration,
            roadmap,
            oracle,
            &mut ledger,
            &mut stats,
            |_, _| Ok(()),
        )? {
            PathRounds::Done(c) => break c,
            PathRounds::Blocked(p) => p,
        };

        choose_cut_edge(&path, roadmap)?;
        stats.record_cut_call(n);
        let cut = most_probable_cut(n, &edge_list, roadmap.capacities(), &[s], &[g])?;
        reset_edge_values(&path, roadmap);
        if let Some(cut) = cut {
            if evaluate_cut_candidate(&cut, roadmap, oracle, &mut ledger)? {
                break Certificate::Infeasible(cut);
            }
        }
        clock.end_iteration(&mut stats, &ledger);
    };
    clock.end_iteration(&mut stats, &ledger);
    clock.pause();
    clock.sync(&mut stats, &ledger);
    Ok(Verdict { certificate, stats })
}
