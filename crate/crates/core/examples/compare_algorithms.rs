//! Every algorithm on the same instances, checked against ground truth.
//!
//! cargo run --release --example compare_algorithms

use roadmap_feasibility::generators::{build_instance, InstanceSpec, PriorMode, RoadmapKind};
use roadmap_feasibility::Algorithm;

fn main() -> roadmap_feasibility::Result<()> {
    println!("{:<38} {:<10} {:<10} {:>6} {:>6} {:>8} {:>8}", "instance", "algorithm", "verdict", "evals", "iters", "max cut", "us");
    for scene in ["passage", "zigzag"] {
        for blocked in [false, true] {
            let spec = InstanceSpec {
                scene: scene.into(),
                kind: RoadmapKind::Prm,
                size: 1000,
                n_vertices: None,
                k_neighbors: None,
                prior: PriorMode::Noisy(Default::default()),
                blocked,
                seed: 2,
            };
            let inst = build_instance(&spec)?;
            let oracle = inst.oracle();
            for alg in Algorithm::ALL {
                let mut roadmap = inst.roadmap.clone();
                let v = alg.run(&mut roadmap, &oracle, 1)?;
                v.validate(&roadmap)?;
                assert_eq!(v.is_feasible(), inst.feasible());
                let s = &v.stats;
                println!(
                    "{:<38} {:<10} {:<10} {:>6} {:>6} {:>8} {:>8}",
                    spec.id(),
                    alg.name(),
                    v.label(),
                    s.n_evaluations,
                    s.n_iterations,
                    s.max_cut_input_vertices,
                    s.wall_time_us()
                );
            }
        }
    }
    Ok(())
}
