//! Feasibility detection on probabilistic prior roadmaps.
//!
//! A prior roadmap is a graph whose edges carry a probability of being
//! collision-free. Finding out an edge's true status costs an oracle call,
//! so the algorithms here decide whether the start can reach the goal
//! while evaluating as few edges as possible. A feasible answer comes with
//! a path of edges confirmed free, an infeasible one with a set of edges
//! confirmed in collision that separates start from goal.
//!
//! ```
//! use roadmap_feasibility::generators::{build_instance, InstanceSpec, PriorMode, RoadmapKind};
//! use roadmap_feasibility::Algorithm;
//!
//! let spec = InstanceSpec {
//!     scene: "passage".into(),
//!     kind: RoadmapKind::Prm,
//!     size: 200,
//!     n_vertices: None,
//!     k_neighbors: None,
//!     prior: PriorMode::Noisy(Default::default()),
//!     blocked: true,
//!     seed: 1,
//! };
//! let instance = build_instance(&spec)?;
//! let mut roadmap = instance.roadmap.clone();
//! let verdict = Algorithm::Idpc.run(&mut roadmap, &instance.oracle(), 1)?;
//! assert!(!verdict.is_feasible());
//! verdict.validate(&roadmap)?;
//! # Ok::<(), roadmap_feasibility::Error>(())
//! ```
//!
//! See the `examples/` directory for each capability in isolation.

pub mod algorithm;
pub mod bench;
pub mod baselines;
pub mod error;
pub mod generators;
pub mod idpc;
pub mod ipc;
pub mod oracle;
pub mod roadmap;
pub mod search;
pub mod verdict;

pub use algorithm::Algorithm;
pub use error::{Error, Result};
pub use verdict::{Certificate, IterationStats, Verdict};
