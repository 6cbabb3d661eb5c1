//! Most probable path, most probable cut and the push-relabel engine on a
//! small hand-made graph.
//!
//! cargo run --example search_engines

use roadmap_feasibility::roadmap::{capacity_from_prob, weight_from_prob};
use roadmap_feasibility::search::{max_flow_value, most_probable_cut, most_probable_path, FlowNetwork};

fn main() -> roadmap_feasibility::Result<()> {
    //   0 --0.9-- 1 --0.8-- 3
    //    \        |        /
    //     0.5    0.3    0.95
    //       \     |     /
    //        ---- 2 ----
    let edges = [(0, 1), (1, 3), (0, 2), (1, 2), (2, 3)];
    let probs = [0.9, 0.8, 0.5, 0.3, 0.95];
    let weights = probs.iter().map(|&p| weight_from_prob(p)).collect::<Result<Vec<_>, _>>()?;
    let caps = probs.iter().map(|&p| capacity_from_prob(p)).collect::<Result<Vec<_>, _>>()?;

    let path = most_probable_path(4, &edges, &weights, 0, 3)?.expect("connected");
    println!("path {:?} with probability {:.4}", path.vertices, path.probability());

    let cut = most_probable_cut(4, &edges, &caps, &[0], &[3])?.expect("finite cut");
    let p_all_blocked: f64 = cut.edges.iter().map(|&e| 1.0 - probs[e]).product();
    println!(
        "cut edges {:?}, capacity {:.4}, probability all blocked {:.4}",
        cut.edges, cut.total_capacity, p_all_blocked
    );

    let finite: Vec<f64> = caps.iter().map(|c| c.finite().expect("p < 1")).collect();
    println!("max flow {:.4} equals cut capacity", max_flow_value(4, &edges, &finite, 0, 3)?);

    // the engine directly, on a directed network
    let mut net = FlowNetwork::new(4);
    net.add_edge(0, 1, 3.0, 0.0);
    net.add_edge(0, 2, 2.0, 0.0);
    net.add_edge(1, 2, 1.0, 0.0);
    net.add_edge(1, 3, 2.0, 0.0);
    net.add_edge(2, 3, 3.0, 0.0);
    println!("directed max flow {}", net.max_flow(0, 3));
    Ok(())
}
