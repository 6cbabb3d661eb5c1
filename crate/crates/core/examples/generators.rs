//! Roadmap generators, prior calibration and instance files.
//!
//! cargo run --release --example generators

use roadmap_feasibility::generators::{
    build_instance, grid, label_and_calibrate, prm_with_edge_target, sparse_roadmap, InstanceSpec,
    PriorCalibration, PriorMode, RoadmapKind,
};
use roadmap_feasibility::oracle::bundled_scene;
use roadmap_feasibility::roadmap::EdgeStatus;

fn main() -> roadmap_feasibility::Result<()> {
    let scene = bundled_scene("rooms").expect("bundled").scene;

    let (prm, k) = prm_with_edge_target(&scene, 500, 2000, 1)?;
    println!("prm    {} vertices {} edges (k = {k})", prm.vertex_count(), prm.edge_count());
    let g = grid(&scene, 70, 72)?;
    println!("grid   {} vertices {} edges", g.vertex_count(), g.edge_count());
    let s = sparse_roadmap(&scene, 3000, 0.125, 1)?;
    println!("spars  {} vertices {} edges", s.vertex_count(), s.edge_count());

    for mode in ["perfect", "noisy", "none"] {
        let mut r = prm.clone();
        let mode: PriorMode = mode.parse()?;
        let truth = label_and_calibrate(&mut r, &scene, PriorCalibration { mode, seed: 7 })?;
        let (mut free, mut coll) = (Vec::new(), Vec::new());
        for (e, t) in truth.iter().enumerate() {
            match t {
                EdgeStatus::Free => free.push(r.prior(e)),
                EdgeStatus::Collision => coll.push(r.prior(e)),
            }
        }
        let range = |v: &[f64]| {
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            format!("[{lo:.3}, {hi:.3}]")
        };
        println!(
            "{:<8} free p in {} ({} edges), collision p in {} ({} edges)",
            mode.name(),
            range(&free),
            free.len(),
            range(&coll),
            coll.len()
        );
    }

    // complete instances: the same roadmap labelled against both variants
    for blocked in [false, true] {
        let spec = InstanceSpec {
            scene: "rooms".into(),
            kind: RoadmapKind::Prm,
            size: 2000,
            n_vertices: None,
            k_neighbors: None,
            prior: PriorMode::Noisy(Default::default()),
            blocked,
            seed: 3,
        };
        let inst = build_instance(&spec)?;
        println!("{}: ground truth feasible = {}", spec.id(), inst.feasible());
    }
    Ok(())
}
