use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use roadmap_feasibility::bench::{self, BenchConfig, BenchError};

#[derive(Parser)]
#[command(version, about = "Feasibility benchmarks on probabilistic prior roadmaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the instances of a sweep config and write them to its output directory.
    Generate { config: PathBuf },
    /// Run the configured algorithms on generated instances and emit CSV.
    Run {
        config: PathBuf,
        /// Write the CSV here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Summarise differences to a baseline algorithm with 95% intervals.
    Compare {
        csv: PathBuf,
        #[arg(short, long, default_value = "idpc")]
        baseline: String,
    },
    /// Cross-check search engines and algorithms against brute force.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, BenchError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn execute(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Generate { config } => {
            let cfg = BenchConfig::load(&config)?;
            let dirs = bench::cmd_generate(&cfg)?;
            eprintln!("wrote {} instances to {}", dirs.len(), cfg.output.display());
        }
        Command::Run { config, out } => {
            let cfg = BenchConfig::load(&config)?;
            let rows = bench::cmd_run(&cfg)?;
            let mut w = output(out.as_ref())?;
            bench::write_records(&mut w, &rows)?;
            w.flush()?;
        }
        Command::Compare { csv, baseline } => {
            let file = File::open(&csv).map_err(|e| BenchError::MissingInput {
                path: csv.clone(),
                message: e.to_string(),
            })?;
            let rows = bench::read_records(file)?;
            let summary = bench::compare(&rows, &baseline)?;
            bench::write_summary(io::stdout().lock(), &summary)?;
        }
        Command::Selftest { cases, seed } => {
            let results = bench::selftest::run_selftest(cases, seed);
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!("{status} {} ({} cases, {} failures)", r.name, r.cases, r.failures.len());
                for f in r.failures.iter().take(5) {
                    println!("    {f}");
                }
            }
            if !bench::selftest::all_passed(&results) {
                return Err(BenchError::Analysis("selftest failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
