//! Comparison algorithms: pathfinding only, cut finding only, and
//! breadth-first search with evaluation on first touch.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ipc::{evaluate_cut_candidate, evaluate_path_candidate, frontier_cut};
use crate::oracle::{evaluate_edge, EdgeOracle, EvaluationLedger};
use crate::roadmap::{EdgeStatus, Roadmap};
use crate::search::{bfs_path, most_probable_cut, roadmap_path, CandidateCut, CandidatePath};
use crate::verdict::{Certificate, IterationStats, RunClock, Verdict};

fn finish(mut clock: RunClock, mut stats: IterationStats, ledger: &EvaluationLedger, certificate: Certificate) -> Verdict {
    clock.pause();
    clock.sync(&mut stats, ledger);
    Verdict { certificate, stats }
}

fn free_path(roadmap: &Roadmap) -> Result<Option<CandidatePath>> {
    let (s, g) = roadmap.query()?;
    Ok(bfs_path(roadmap, s, g, |e| {
        roadmap.known_status(e) == Some(EdgeStatus::Free)
    }))
}

/// Evaluates most probable paths until one is free. When no path of
/// finite weight remains, the known collisions around the start's
/// reachable set form the cut.
pub fn path_only(roadmap: &mut Roadmap, oracle: &dyn EdgeOracle) -> Result<Verdict> {
    roadmap.query()?;
    let mut clock = RunClock::start();
    let mut ledger = EvaluationLedger::new();
    let mut stats = IterationStats::default();
    let certificate = loop {
        clock.begin_iteration(&mut stats, &ledger);
        stats.n_path_calls += 1;
        let Some(path) = roadmap_path(roadmap)? else {
            break Certificate::Infeasible(frontier_cut(roadmap)?);
        };
        if evaluate_path_candidate(&path, roadmap, oracle, &mut ledger)? {
            break Certificate::Feasible(path);
        }
        clock.end_iteration(&mut stats, &ledger);
    };
    clock.end_iteration(&mut stats, &ledger);
    Ok(finish(clock, stats, &ledger, certificate))
}

/// Evaluates most probable cuts of the whole roadmap until one is fully
/// in collision. When every cut must cross a known-free edge, those edges
/// already join start to goal and the path is read off them.
pub fn cut_only(roadmap: &mut Roadmap, oracle: &dyn EdgeOracle) -> Result<Verdict> {
    let (s, g) = roadmap.query()?;
    let mut clock = RunClock::start();
    let mut ledger = EvaluationLedger::new();
    let mut stats = IterationStats::default();
    let edge_list = roadmap.edge_list();
    let n = roadmap.vertex_count();
    let certificate = loop {
        clock.begin_iteration(&mut stats, &ledger);
        let cut = if s == g {
            None
        } else {
            stats.record_cut_call(n);
            most_probable_cut(n, &edge_list, roadmap.capacities(), &[s], &[g])?
        };
        let Some(cut) = cut else {
            let path = free_path(roadmap)?
                .ok_or_else(|| Error::contract("no finite cut yet no free path"))?;
            break Certificate::Feasible(path);
        };
        if evaluate_cut_candidate(&cut, roadmap, oracle, &mut ledger)? {
            break Certificate::Infeasible(cut);
        }
        clock.end_iteration(&mut stats, &ledger);
    };
    clock.end_iteration(&mut stats, &ledger);
    Ok(finish(clock, stats, &ledger, certificate))
}

/// Breadth-first search from the start that evaluates every unknown edge
/// it touches and only expands across free edges. Each dequeued vertex is
/// one iteration; once the goal has been reached, an inner search over the
/// free edges recovers the path.
pub fn bfs_feasibility(roadmap: &mut Roadmap, oracle: &dyn EdgeOracle) -> Result<Verdict> {
    let (s, g) = roadmap.query()?;
    let mut clock = RunClock::start();
    let mut ledger = EvaluationLedger::new();
    let mut stats = IterationStats::default();
    let mut visited = vec![false; roadmap.vertex_count()];
    visited[s] = true;
    let mut queue = VecDeque::from([s]);

    let certificate = loop {
        if visited[g] {
            stats.n_path_calls += 1;
            if let Some(path) = free_path(roadmap)? {
                break Certificate::Feasible(path);
            }
        }
        let Some(u) = queue.pop_front() else {
            let visited = &visited;
            let edges = roadmap.edge_list();
            break Certificate::Infeasible(CandidateCut::from_vertex_set(
                &edges,
                roadmap.capacities(),
                visited,
            ));
        };
        clock.begin_iteration(&mut stats, &ledger);
        let mut incident = roadmap.neighbors(u).to_vec();
        incident.sort_by_key(|&(_, e)| e);
        for (v, e) in incident {
            if roadmap.needs_evaluation(e) {
                evaluate_edge(&mut ledger, oracle, roadmap, e)?;
            }
            if !visited[v] && roadmap.known_status(e) == Some(EdgeStatus::Free) {
                visited[v] = true;
                queue.push_back(v);
            }
        }
        clock.end_iteration(&mut stats, &ledger);
    };
    Ok(finish(clock, stats, &ledger, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::TableOracle;
    use crate::roadmap::EdgeStatus::{Collision as C, Free as F};

    fn line(n_edges: usize, p: f64) -> Roadmap {
        let mut r = Roadmap::new(2);
        for i in 0..=n_edges {
            r.add_vertex([i as f64, 0.0].into()).unwrap();
        }
        for i in 0..n_edges {
            r.add_edge(i, i + 1, p).unwrap();
        }
        r.set_query(0, n_edges).unwrap();
        r
    }

    #[test]
    fn bfs_on_free_corridor_counts_touched_edges() {
        let mut r = line(4, 0.5);
        let table = TableOracle::from_statuses(&r, &[F; 4]).unwrap();
        let v = bfs_feasibility(&mut r, &table).unwrap();
        assert!(v.is_feasible());
        assert_eq!(v.stats.n_evaluations, 4);
        v.validate(&r).unwrap();
    }

    #[test]
    fn bfs_blocked_goal_evaluates_everything_reachable() {
        // a free square 0-1-2-3 with the goal 4 hanging off 3 by a collision edge
        let mut r = Roadmap::new(2);
        for i in 0..5 {
            r.add_vertex([i as f64, 1.0].into()).unwrap();
        }
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)] {
            r.add_edge(u, v, 0.5).unwrap();
        }
        r.set_query(0, 4).unwrap();
        let table = TableOracle::from_statuses(&r, &[F, F, F, F, C]).unwrap();
        let v = bfs_feasibility(&mut r, &table).unwrap();
        assert!(!v.is_feasible());
        assert_eq!(v.stats.n_evaluations, 5);
        v.validate(&r).unwrap();
    }

    #[test]
    fn bfs_disconnected_prior_graph() {
        let mut r = line(2, 0.5);
        r.add_vertex([9.0, 9.0].into()).unwrap();
        r.set_query(0, 3).unwrap();
        let table = TableOracle::from_statuses(&r, &[F, F]).unwrap();
        let v = bfs_feasibility(&mut r, &table).unwrap();
        assert!(!v.is_feasible());
        assert_eq!(v.stats.n_path_calls, 0);
        let Certificate::Infeasible(cut) = &v.certificate else { unreachable!() };
        assert!(cut.is_empty());
    }

    #[test]
    fn path_only_stops_after_collision_bridge() {
        let mut r = line(1, 0.5);
        let table = TableOracle::from_statuses(&r, &[C]).unwrap();
        let v = path_only(&mut r, &table).unwrap();
        assert!(!v.is_feasible());
        assert_eq!(v.stats.n_evaluations, 1);
        v.validate(&r).unwrap();
    }

    #[test]
    fn perfect_priors_cost_nothing() {
        let mut r = line(3, 1.0);
        let table = TableOracle::from_statuses(&r, &[F; 3]).unwrap();
        let v = path_only(&mut r.clone(), &table).unwrap();
        assert_eq!((v.stats.n_path_calls, v.stats.n_evaluations), (1, 0));

        let mut blocked = line(3, 1.0);
        blocked.add_vertex([0.0, 5.0].into()).unwrap();
        let e = blocked.add_edge(3, 4, 0.0).unwrap();
        blocked.set_query(0, 4).unwrap();
        let mut statuses = vec![F; 3];
        statuses.push(C);
        assert_eq!(e, 3);
        let table = TableOracle::from_statuses(&blocked, &statuses).unwrap();
        let v = cut_only(&mut blocked, &table).unwrap();
        assert!(!v.is_feasible());
        assert_eq!((v.stats.n_cut_calls, v.stats.n_evaluations), (1, 0));
        v.validate(&blocked).unwrap();
        let table = table_for_line(&r);
        let v = cut_only(&mut r, &table).unwrap();
        assert!(v.is_feasible());
    }

    fn table_for_line(r: &Roadmap) -> TableOracle {
        TableOracle::from_statuses(r, &vec![F; r.edge_count()]).unwrap()
    }

    #[test]
    fn cut_only_free_bridge_between_cliques() {
        // triangles {0,1,2} and {3,4,5} joined by the bridge 2-3
        let mut r = Roadmap::new(2);
        for i in 0..6 {
            r.add_vertex([i as f64, 0.0].into()).unwrap();
        }
        for (u, v) in [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)] {
            r.add_edge(u, v, 0.5).unwrap();
        }
        r.set_query(0, 5).unwrap();
        let table = TableOracle::from_statuses(&r, &[F; 7]).unwrap();
        let v = cut_only(&mut r, &table).unwrap();
        assert!(v.is_feasible());
        assert_eq!(r.known_status(3), Some(F));
        v.validate(&r).unwrap();
    }
}
