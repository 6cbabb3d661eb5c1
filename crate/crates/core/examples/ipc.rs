//! Iterative path and cut finding on a generated instance, with the
//! paths-per-iteration setting swept.
//!
//! cargo run --release --example ipc

use roadmap_feasibility::generators::{build_instance, InstanceSpec, PriorMode, RoadmapKind};
use roadmap_feasibility::ipc::run_ipc;
use roadmap_feasibility::Certificate;

fn main() -> roadmap_feasibility::Result<()> {
    for blocked in [false, true] {
        let spec = InstanceSpec {
            scene: "passage".into(),
            kind: RoadmapKind::Prm,
            size: 2000,
            n_vertices: None,
            k_neighbors: None,
            prior: PriorMode::Noisy(Default::default()),
            blocked,
            seed: 11,
        };
        let inst = build_instance(&spec)?;
        println!("{} ({} edges)", spec.id(), inst.roadmap.edge_count());
        for ppi in [1, 2, 3, 5] {
            let mut roadmap = inst.roadmap.clone();
            let verdict = run_ipc(&mut roadmap, &inst.oracle(), ppi)?;
            verdict.validate(&roadmap)?;
            let s = &verdict.stats;
            println!(
                "  ppi {ppi}: {verdict}; {} path calls, {} cut calls, {} us",
                s.n_path_calls,
                s.n_cut_calls,
                s.wall_time_us()
            );
            if ppi == 1 {
                match &verdict.certificate {
                    Certificate::Feasible(p) => println!("    free path through {} vertices", p.vertices.len()),
                    Certificate::Infeasible(c) => println!("    colliding cut edges {:?}", c.edges),
                }
            }
        }
    }
    Ok(())
}
