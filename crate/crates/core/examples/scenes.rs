//! Bundled scenes, segment checks and the scene file format.
//!
//! cargo run --example scenes

use roadmap_feasibility::oracle::{bundled_scene, ConvexObstacle, Scene, BUNDLED_SCENES};
use roadmap_feasibility::roadmap::Configuration;

fn main() -> roadmap_feasibility::Result<()> {
    for name in BUNDLED_SCENES {
        let b = bundled_scene(name).expect("bundled");
        let open = b.scene.clone().with_toggles(false);
        let sealed = b.scene.clone().with_toggles(true);
        println!(
            "{name:<8} {} base obstacles, {} toggles; start-goal segment: open {}, sealed {}",
            open.base_obstacles().len(),
            open.toggle_obstacles().len(),
            open.evaluate_segment(&b.start, &b.goal)?,
            sealed.evaluate_segment(&b.start, &b.goal)?,
        );
    }

    // a scene of your own, round-tripped through its text form
    let mut scene = Scene::new(vec![(0.0, 10.0), (0.0, 10.0)]);
    scene.add_obstacle(ConvexObstacle::rectangle((4.0, 6.0), (0.0, 8.0))?, false)?;
    scene.add_obstacle(ConvexObstacle::sphere(vec![5.0, 9.0], 1.2)?, true)?;
    let a = Configuration::new(vec![1.0, 9.0])?;
    let b = Configuration::new(vec![9.0, 9.0])?;
    println!("\ncustom scene, gap above the wall: {}", scene.evaluate_segment(&a, &b)?);
    scene.set_toggles_active(true);
    println!("with the toggle disc active:      {}", scene.evaluate_segment(&a, &b)?);

    let text = scene.to_text();
    print!("\n{text}");
    let back = Scene::read_from(text.as_bytes())?;
    assert_eq!(back.to_text(), text);
    Ok(())
}
