mod common;

use std::fs;
use std::path::Path;

use common::T975;
use roadmap_feasibility::bench::{
    self, compare, mean_ci95, read_records, write_records, BenchConfig, BenchError, Metric,
};

fn config(dir: &Path, body: &str) -> BenchConfig {
    let path = dir.join("bench.toml");
    fs::write(&path, body).unwrap();
    BenchConfig::load(&path).unwrap()
}

const SMALL: &str = r#"
scene = ["passage", "zigzag"]
seeds = 3
output = "out"
[roadmap]
n_edges = 300
[algorithm]
names = ["ipc", "idpc", "path_only"]
"#;

fn csv_without_wall_time(text: &str) -> String {
    text.lines()
        .map(|l| match l.rsplit_once(',') {
            Some((head, _)) if !l.starts_with('#') => head.to_string(),
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn generate_and_run_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), SMALL);
    assert_eq!(bench::cmd_generate(&cfg).unwrap().len(), 12);
    let manifest = fs::read_to_string(cfg.output.join(bench::MANIFEST_FILE)).unwrap();
    assert_eq!(manifest.lines().filter(|l| !l.starts_with('#')).count(), 12);

    let render = || {
        let mut buf = Vec::new();
        write_records(&mut buf, &bench::cmd_run(&cfg).unwrap()).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let first = render();
    bench::cmd_generate(&cfg).unwrap();
    let second = render();
    assert_eq!(csv_without_wall_time(&first), csv_without_wall_time(&second));

    let rows = read_records(first.as_bytes()).unwrap();
    assert_eq!(rows.len(), 36);
    for r in &rows {
        assert!(r.correct);
        assert!(r.n_evaluations <= r.n_edges);
        assert_eq!(r.verdict == "FEASIBLE", r.ground_truth_feasible);
    }
    // rows follow sweep order, algorithms in config order
    assert_eq!(rows[0].algorithm, "ipc");
    assert_eq!(rows[1].algorithm, "idpc");
    assert_eq!(rows[0].instance_id, cfg.instances[0].id());
    for pair in rows.chunks(3) {
        assert!(pair.iter().all(|r| r.verdict == pair[0].verdict));
    }
}

#[test]
fn zero_algorithms_give_a_header_only_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &SMALL.replace(r#"["ipc", "idpc", "path_only"]"#, "[]"));
    bench::cmd_generate(&cfg).unwrap();
    let rows = bench::cmd_run(&cfg).unwrap();
    assert!(rows.is_empty());
    let mut buf = Vec::new();
    write_records(&mut buf, &rows).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert_eq!(text.lines().nth(1).unwrap(), bench::COLUMNS.join(","));
}

#[test]
fn missing_instances_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), SMALL);
    let err = bench::cmd_run(&cfg).unwrap_err();
    assert!(matches!(err, BenchError::MissingInput { .. }), "{err}");
    assert_eq!(err.exit_code(), 3);

    bench::cmd_generate(&cfg).unwrap();
    fs::remove_file(cfg.instance_dir(&cfg.instances[4]).join(bench::ROADMAP_FILE)).unwrap();
    assert_eq!(bench::cmd_run(&cfg).unwrap_err().exit_code(), 3);
}

#[test]
fn malformed_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "scene = \"rooms\"\nseeds = 2\n\n[roadmap]\nn_edges = -5\n").unwrap();
    let err = BenchConfig::load(&path).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("line 5"), "{err}");
}

#[test]
fn empty_sweep_generates_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "scene = []\nseeds = 4\n[roadmap]\nn_edges = 100\n");
    assert!(bench::cmd_generate(&cfg).unwrap().is_empty());
}

#[test]
fn compare_against_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), SMALL);
    bench::cmd_generate(&cfg).unwrap();
    let rows = bench::cmd_run(&cfg).unwrap();
    let summary = compare(&rows, "idpc").unwrap();
    for c in summary.iter().filter(|c| c.algorithm == "idpc") {
        assert_eq!((c.mean, c.ci_low, c.ci_high), (0.0, 0.0, 0.0));
    }
    // three classes per scene and size, two metrics, three algorithms
    assert_eq!(summary.len(), 2 * 3 * 2 * 3);
    assert!(matches!(compare(&rows, "bfs"), Err(BenchError::Analysis(_))));
    assert_eq!(compare(&rows, "bfs").unwrap_err().exit_code(), 4);
}

#[test]
fn path_only_costs_more_than_idpc_on_infeasible_instances() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        r#"
scene = ["passage", "rooms", "zigzag", "clutter"]
seeds = 4
variants = ["infeasible"]
[roadmap]
n_edges = 1000
[algorithm]
names = ["idpc", "path_only"]
"#,
    );
    bench::cmd_generate(&cfg).unwrap();
    let rows = bench::cmd_run(&cfg).unwrap();
    let evals: Vec<f64> = rows
        .chunks(2)
        .map(|p| p[1].n_evaluations as f64 - p[0].n_evaluations as f64)
        .collect();
    assert!(mean_ci95(&evals).0 > 0.0);
    let summary = compare(&rows, "idpc").unwrap();
    let infeasible_total: f64 = summary
        .iter()
        .filter(|c| c.algorithm == "path_only" && c.metric == Metric::Evaluations && c.class == "infeasible")
        .map(|c| c.mean * c.n as f64)
        .sum();
    assert!(infeasible_total > 0.0);
}

#[test]
fn intervals_match_tabulated_quantiles() {
    // deterministic samples of every tabulated size
    for &(dof, t) in &T975 {
        let n = dof + 1;
        let xs: Vec<f64> = (0..n).map(|i| ((i * 37 + 11) % 17) as f64 - 3.5).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / dof as f64).sqrt();
        let (m, h) = mean_ci95(&xs);
        assert!((m - mean).abs() < 1e-12);
        assert!((h - t * sd / (n as f64).sqrt()).abs() < 1e-6 * h.max(1.0), "dof {dof}: {h}");
    }
}
