//! The benchmark harness as a library: parse a sweep, write instances,
//! run algorithms to CSV and summarise differences to a baseline.
//!
//! cargo run --release --example benchmark_sweep

use std::path::Path;

use roadmap_feasibility::bench::{self, BenchConfig, BenchError};

const CONFIG: &str = r#"
scene = ["passage", "rooms", "zigzag", "clutter"]
seeds = 3
variants = ["infeasible"]
output = "sweep"

[roadmap]
type = "prm"
n_edges = 1000

[prior]
mode = "noisy"
params = [0.3, 0.4, 0.6, 0.7]

[algorithm]
names = ["idpc", "ipc", "path_only", "cut_only", "bfs"]
paths_per_iteration = 1
"#;

fn main() -> Result<(), BenchError> {
    let dir = std::env::temp_dir().join("roadmap-feasibility-sweep");
    let config = BenchConfig::parse(CONFIG, "sweep.toml", &dir)?;
    let written = bench::cmd_generate(&config)?;
    println!("{} instances under {}", written.len(), config.output.display());

    let rows = bench::cmd_run(&config)?;
    let csv_path = dir.join("results.csv");
    bench::write_records(std::fs::File::create(&csv_path)?, &rows)?;
    println!("{} rows in {}\n", rows.len(), csv_path.display());

    let summary = bench::compare(&rows, "idpc")?;
    let mixed: Vec<_> = summary.into_iter().filter(|c| c.class == "mixed").collect();
    bench::write_summary(std::io::stdout().lock(), &mixed)?;

    // a bad config reports the offending line
    let err = BenchConfig::parse("scene = \"rooms\"\nseeds = 1\n[roadmap]\nn_edges = \"many\"\n", "bad.toml", Path::new("."))
        .unwrap_err();
    println!("\n{err} (exit code {})", err.exit_code());
    Ok(())
}
