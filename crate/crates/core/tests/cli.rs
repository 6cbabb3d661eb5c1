use std::fs;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roadmap-feasibility"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn subcommands_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bench.toml");
    fs::write(
        &cfg,
        "scene = \"rooms\"\nseeds = 2\noutput = \"out\"\n[roadmap]\nn_edges = 200\n[algorithm]\nnames = [\"ipc\", \"idpc\"]\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    // run before generate: instances missing
    assert_eq!(code(&cli(&["run", cfg])), 3);

    assert_eq!(code(&cli(&["generate", cfg])), 0);
    let out = cli(&["run", cfg]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("# roadmap-feasibility bench schema v1\nalgorithm,scene,"));
    assert_eq!(stdout.lines().count(), 2 + 8);

    let csv = dir.path().join("results.csv");
    let csv = csv.to_str().unwrap();
    assert_eq!(code(&cli(&["run", cfg, "--out", csv])), 0);
    let out = cli(&["compare", csv, "--baseline", "idpc"]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.lines().next().unwrap().starts_with("scene"));
    assert!(table.contains("mixed"));

    assert_eq!(code(&cli(&["compare", csv, "--baseline", "bfs"])), 4);
    assert_eq!(code(&cli(&["compare", "/nonexistent.csv"])), 3);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "scene = \"rooms\"\nseeds = 2\nwhatever = 1\n").unwrap();
    let out = cli(&["generate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
}

#[test]
fn selftest_passes() {
    let out = cli(&["selftest", "--cases", "200", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}
