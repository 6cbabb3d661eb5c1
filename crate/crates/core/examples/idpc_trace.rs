//! Steps a divide-and-conquer run one iteration at a time, printing the
//! per-iteration trace and inspecting the decomposition between steps.
//!
//! cargo run --release --example idpc_trace

use roadmap_feasibility::generators::{build_instance, InstanceSpec, PriorMode, RoadmapKind};
use roadmap_feasibility::idpc::{IdpcRun, Step, TRACE_HEADER};

fn main() -> roadmap_feasibility::Result<()> {
    let spec = InstanceSpec {
        scene: "rooms".into(),
        kind: RoadmapKind::Prm,
        size: 500,
        n_vertices: None,
        k_neighbors: None,
        prior: PriorMode::Noisy(Default::default()),
        blocked: true,
        seed: 2,
    };
    let inst = build_instance(&spec)?;
    let oracle = inst.oracle();
    let mut roadmap = inst.roadmap.clone();
    let mut run = IdpcRun::new(&mut roadmap, &oracle, 1)?;

    println!("{}: {} vertices", spec.id(), inst.roadmap.vertex_count());
    println!("{TRACE_HEADER}");
    let verdict = loop {
        match run.step()? {
            Step::Continue(trace) => {
                println!("{trace}");
                run.subgraphs().check_decomposition(run.roadmap())?;
            }
            Step::Done(v) => break v,
        }
    };
    println!("{verdict}");
    println!("cut input sizes {:?}", verdict.stats.cut_input_sizes);
    Ok(())
}
