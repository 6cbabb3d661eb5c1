use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instances::read_instance;
use super::{BenchConfig, BenchError};
use crate::algorithm::Algorithm;
use crate::generators::{ground_truth_feasible, InstanceSpec};

/// First line of every results file.
pub const SCHEMA_LINE: &str = "# roadmap-feasibility bench schema v1";

pub const COLUMNS: [&str; 16] = [
    "algorithm",
    "scene",
    "instance_id",
    "seed",
    "n_vertices",
    "n_edges",
    "prior_mode",
    "ground_truth_feasible",
    "verdict",
    "correct",
    "n_evaluations",
    "n_iterations",
    "n_path_calls",
    "n_cut_calls",
    "max_cut_input_vertices",
    "wall_time_us",
];

/// One algorithm run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub scene: String,
    pub instance_id: String,
    pub seed: u64,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub prior_mode: String,
    pub ground_truth_feasible: bool,
    pub verdict: String,
    pub correct: bool,
    pub n_evaluations: usize,
    pub n_iterations: usize,
    pub n_path_calls: usize,
    pub n_cut_calls: usize,
    pub max_cut_input_vertices: usize,
    /// Algorithm time in microseconds, oracle lookups excluded.
    pub wall_time_us: u64,
}

/// Runs each algorithm on a fresh copy of the stored instance. A wrong
/// verdict or an invalid certificate aborts with a diagnostic.
pub fn run_instance(
    spec: &InstanceSpec,
    dir: &std::path::Path,
    algorithms: &[Algorithm],
    paths_per_iteration: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    let stored = read_instance(dir)?;
    let id = spec.id();
    let truth_feasible = ground_truth_feasible(&stored.roadmap, &stored.truth)?;
    let mut rows = Vec::with_capacity(algorithms.len());
    for &alg in algorithms {
        let mut roadmap = stored.roadmap.clone();
        let verdict = alg
            .run(&mut roadmap, &stored.oracle, paths_per_iteration)
            .map_err(|e| BenchError::Analysis(format!("{alg} failed on {id}: {e}")))?;
        if verdict.is_feasible() != truth_feasible {
            return Err(BenchError::Analysis(format!(
                "{alg} returned {} on {id}, ground truth is {}",
                verdict.label(),
                if truth_feasible { "FEASIBLE" } else { "INFEASIBLE" }
            )));
        }
        verdict
            .validate(&roadmap)
            .map_err(|e| BenchError::Analysis(format!("{alg} gave an invalid certificate on {id}: {e}")))?;
        let s = &verdict.stats;
        rows.push(BenchRecord {
            algorithm: alg.name().to_string(),
            scene: spec.scene.clone(),
            instance_id: id.clone(),
            seed: spec.seed,
            n_vertices: roadmap.vertex_count(),
            n_edges: roadmap.edge_count(),
            prior_mode: spec.prior.name().to_string(),
            ground_truth_feasible: truth_feasible,
            verdict: verdict.label().to_string(),
            correct: true,
            n_evaluations: s.n_evaluations,
            n_iterations: s.n_iterations,
            n_path_calls: s.n_path_calls,
            n_cut_calls: s.n_cut_calls,
            max_cut_input_vertices: s.max_cut_input_vertices,
            wall_time_us: s.wall_time_us(),
        });
    }
    Ok(rows)
}

/// Runs the configured algorithms over every instance of the sweep.
/// Instances run in parallel; rows come back in sweep order.
pub fn cmd_run(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let per_instance = config
        .instances
        .par_iter()
        .map(|spec| {
            run_instance(
                spec,
                &config.instance_dir(spec),
                &config.algorithms,
                config.paths_per_iteration,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(per_instance.into_iter().flatten().collect())
}

pub fn write_records(mut w: impl Write, records: &[BenchRecord]) -> Result<(), BenchError> {
    writeln!(w, "{SCHEMA_LINE}")?;
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    csv.write_record(COLUMNS)?;
    for r in records {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_records(r: impl Read) -> Result<Vec<BenchRecord>, BenchError> {
    let mut csv = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let mut out = Vec::new();
    for row in csv.deserialize() {
        out.push(row?);
    }
    Ok(out)
}
