use std::fmt;
use std::str::FromStr;

use crate::baselines::{bfs_feasibility, cut_only, path_only};
use crate::error::{Error, Result};
use crate::idpc::run_idpc;
use crate::ipc::run_ipc;
use crate::oracle::EdgeOracle;
use crate::roadmap::Roadmap;
use crate::verdict::Verdict;

/// The feasibility algorithms, by their command-line names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ipc,
    Idpc,
    PathOnly,
    CutOnly,
    Bfs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Ipc,
        Algorithm::Idpc,
        Algorithm::PathOnly,
        Algorithm::CutOnly,
        Algorithm::Bfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ipc => "ipc",
            Algorithm::Idpc => "idpc",
            Algorithm::PathOnly => "path_only",
            Algorithm::CutOnly => "cut_only",
            Algorithm::Bfs => "bfs",
        }
    }

    /// Runs the algorithm on `roadmap`, which must have its query attached.
    /// `paths_per_iteration` only affects the iterative algorithms.
    pub fn run(
        self,
        roadmap: &mut Roadmap,
        oracle: &dyn EdgeOracle,
        paths_per_iteration: usize,
    ) -> Result<Verdict> {
        match self {
            Algorithm::Ipc => run_ipc(roadmap, oracle, paths_per_iteration),
            Algorithm::Idpc => run_idpc(roadmap, oracle, paths_per_iteration),
            Algorithm::PathOnly => path_only(roadmap, oracle),
            Algorithm::CutOnly => cut_only(roadmap, oracle),
            Algorithm::Bfs => bfs_feasibility(roadmap, oracle),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::contract(format!("unknown algorithm `{s}`")))
    }
}
