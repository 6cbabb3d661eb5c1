//! Benchmark harness: sweep configs, instance files, result records and
//! paired comparisons.

mod compare;
mod config;
mod instances;
mod records;
pub mod selftest;

use std::path::PathBuf;

use thiserror::Error;

pub use compare::{compare, mean_ci95, write_summary, Comparison, Metric, SUMMARY_HEADER};
pub use config::BenchConfig;
pub use instances::{
    cmd_generate, read_instance, read_query, write_instance, write_query, StoredInstance, MANIFEST_FILE,
    QUERY_FILE, ROADMAP_FILE, SCENE_FILE, TRUTH_FILE,
};
pub use records::{cmd_run, read_records, run_instance, write_records, BenchRecord, COLUMNS, SCHEMA_LINE};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: line {line}: {message}")]
    Config { path: String, line: usize, message: String },

    #[error("{}: {message}", path.display())]
    MissingInput { path: PathBuf, message: String },

    #[error("{0}")]
    Analysis(String),

    #[error(transparent)]
    Core(#[from] crate::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl BenchError {
    /// Process exit code: 2 for config errors, 3 for missing or unreadable
    /// input, 4 for analysis failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config { .. } => 2,
            BenchError::MissingInput { .. } | BenchError::Io(_) | BenchError::Csv(_) => 3,
            BenchError::Analysis(_) | BenchError::Core(_) => 4,
        }
    }
}
