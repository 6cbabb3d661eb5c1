//! Point-robot worlds built from convex obstacles.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use super::geometry;
use crate::error::{Error, Result};
use crate::roadmap::{Configuration, EdgeStatus};

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexObstacle {
    /// Counterclockwise vertex loop; planar scenes only.
    Polygon(Vec<[f64; 2]>),
    /// Axis-aligned box, one `(lo, hi)` interval per axis.
    Box(Vec<(f64, f64)>),
    Sphere { center: Vec<f64>, radius: f64 },
}

impl ConvexObstacle {
    pub fn polygon(vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidObstacle("non-finite polygon vertex".into()));
        }
        if !geometry::is_convex_ccw(&vertices) {
            return Err(Error::InvalidObstacle(
                "polygon must be convex, counterclockwise and non-degenerate".into(),
            ));
        }
        Ok(ConvexObstacle::Polygon(vertices))
    }

    /// Planar rectangle given as a counterclockwise polygon.
    pub fn rectangle(x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        Self::polygon(vec![[x.0, y.0], [x.1, y.0], [x.1, y.1], [x.0, y.1]])
    }

    pub fn aabb(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals
            .iter()
            .any(|&(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo <= hi))
        {
            return Err(Error::InvalidObstacle("box needs lo <= hi on every axis".into()));
        }
        Ok(ConvexObstacle::Box(intervals))
    }

    pub fn sphere(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidObstacle("sphere needs a finite center and radius > 0".into()));
        }
        Ok(ConvexObstacle::Sphere { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexObstacle::Polygon(_) => 2,
            ConvexObstacle::Box(b) => b.len(),
            ConvexObstacle::Sphere { center, .. } => center.len(),
        }
    }

    fn bounding_box(&self) -> Vec<(f64, f64)> {
        match self {
            ConvexObstacle::Polygon(vs) => (0..2)
                .map(|i| {
                    let lo = vs.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min);
                    let hi = vs.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max);
                    (lo, hi)
                })
                .collect(),
            ConvexObstacle::Box(b) => b.clone(),
            ConvexObstacle::Sphere { center, radius } => {
                center.iter().map(|c| (c - radius, c + radius)).collect()
            }
        }
    }

    pub fn intersects_segment(&self, a: &[f64], b: &[f64]) -> bool {
        match self {
            ConvexObstacle::Polygon(vs) => {
                geometry::segment_hits_polygon([a[0], a[1]], [b[0], b[1]], vs)
            }
            ConvexObstacle::Box(bounds) => geometry::segment_hits_box(a, b, bounds),
            ConvexObstacle::Sphere { center, radius } => {
                geometry::segment_hits_sphere(a, b, center, *radius)
            }
        }
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        self.intersects_segment(p, p)
    }
}

/// Something that can classify a straight segment between configurations.
pub trait SegmentChecker {
    fn segment_status(&self, a: &Configuration, b: &Configuration) -> Result<EdgeStatus>;
}

/// A bounded workspace with base obstacles and a group of toggleable ones.
/// Activating the toggles yields the blocked variant of a scene.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    bounds: Vec<(f64, f64)>,
    base: Vec<ConvexObstacle>,
    toggles: Vec<ConvexObstacle>,
    toggles_active: bool,
}

impl Scene {
    pub fn new(bounds: Vec<(f64, f64)>) -> Self {
        Scene {
            bounds,
            base: Vec::new(),
            toggles: Vec::new(),
            toggles_active: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn base_obstacles(&self) -> &[ConvexObstacle] {
        &self.base
    }

    pub fn toggle_obstacles(&self) -> &[ConvexObstacle] {
        &self.toggles
    }

    pub fn toggles_active(&self) -> bool {
        self.toggles_active
    }

    pub fn set_toggles_active(&mut self, active: bool) {
        self.toggles_active = active;
    }

    pub fn with_toggles(mut self, active: bool) -> Self {
        self.toggles_active = active;
        self
    }

    pub fn add_obstacle(&mut self, obstacle: ConvexObstacle, toggle: bool) -> Result<()> {
        if obstacle.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: obstacle.dim(),
            });
        }
        let overlaps = obstacle
            .bounding_box()
            .iter()
            .zip(&self.bounds)
            .all(|(o, b)| o.0 <= b.1 && o.1 >= b.0);
        if !overlaps {
            return Err(Error::InvalidObstacle("obstacle lies outside the scene bounds".into()));
        }
        if toggle {
            self.toggles.push(obstacle);
        } else {
            self.base.push(obstacle);
        }
        Ok(())
    }

    pub fn active_obstacles(&self) -> impl Iterator<Item = &ConvexObstacle> {
        let toggles: &[ConvexObstacle] = if self.toggles_active { &self.toggles } else { &[] };
        self.base.iter().chain(toggles)
    }

    fn check_dim(&self, c: &Configuration) -> Result<()> {
        if c.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: c.dim(),
            });
        }
        Ok(())
    }

    /// Classifies the closed segment `[a, b]` against the active obstacles.
    pub fn evaluate_segment(&self, a: &Configuration, b: &Configuration) -> Result<EdgeStatus> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let hit = self
            .active_obstacles()
            .any(|o| o.intersects_segment(a.coords(), b.coords()));
        Ok(if hit { EdgeStatus::Collision } else { EdgeStatus::Free })
    }

    /// Same as [`Scene::evaluate_segment`] but against base obstacles only.
    pub fn evaluate_segment_base(&self, a: &Configuration, b: &Configuration) -> Result<EdgeStatus> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let hit = self.base.iter().any(|o| o.intersects_segment(a.coords(), b.coords()));
        Ok(if hit { EdgeStatus::Collision } else { EdgeStatus::Free })
    }

    pub fn point_is_free(&self, p: &Configuration) -> Result<bool> {
        self.check_dim(p)?;
        Ok(!self.active_obstacles().any(|o| o.contains_point(p.coords())))
    }

    /// Text form: `bounds <d> lo1 hi1 ...`, then one obstacle per line
    /// (`poly k x1 y1 ...`, `box lo1 hi1 ...`, `sphere c1 ... r`), each
    /// optionally prefixed by `toggle`. A trailing `toggles active` line
    /// records the toggle state.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let b: Vec<String> = self
            .bounds
            .iter()
            .flat_map(|(lo, hi)| [lo.to_string(), hi.to_string()])
            .collect();
        let _ = writeln!(out, "bounds {} {}", self.dim(), b.join(" "));
        let groups: [(&[ConvexObstacle], &str); 2] = [(&self.base, ""), (&self.toggles, "toggle ")];
        for (list, prefix) in groups {
            for o in list {
                let body = match o {
                    ConvexObstacle::Polygon(vs) => {
                        let coords: Vec<String> = vs
                            .iter()
                            .flat_map(|v| [v[0].to_string(), v[1].to_string()])
                            .collect();
                        format!("poly {} {}", vs.len(), coords.join(" "))
                    }
                    ConvexObstacle::Box(iv) => {
                        let coords: Vec<String> = iv
                            .iter()
                            .flat_map(|(lo, hi)| [lo.to_string(), hi.to_string()])
                            .collect();
                        format!("box {}", coords.join(" "))
                    }
                    ConvexObstacle::Sphere { center, radius } => {
                        let mut coords: Vec<String> = center.iter().map(|c| c.to_string()).collect();
                        coords.push(radius.to_string());
                        format!("sphere {}", coords.join(" "))
                    }
                };
                let _ = writeln!(out, "{prefix}{body}");
            }
        }
        if self.toggles_active {
            out.push_str("toggles active\n");
        }
        out
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Scene> {
        let mut scene: Option<Scene> = None;
        for (i, line) in r.lines().enumerate() {
            let ln = i + 1;
            let line = line?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "bounds" {
                if scene.is_some() {
                    return Err(Error::parse(ln, "duplicate bounds line"));
                }
                let nums = parse_numbers(ln, &tokens[1..])?;
                let d = nums.first().copied().unwrap_or(0.0);
                if d < 1.0 || d.fract() != 0.0 || nums.len() != 1 + 2 * d as usize {
                    return Err(Error::parse(ln, "expected `bounds <d> lo1 hi1 ... lod hid`"));
                }
                let bounds: Vec<(f64, f64)> = nums[1..].chunks(2).map(|c| (c[0], c[1])).collect();
                if bounds.iter().any(|b| b.0 >= b.1) {
                    return Err(Error::parse(ln, "bounds need lo < hi"));
                }
                scene = Some(Scene::new(bounds));
                continue;
            }
            let scene = scene
                .as_mut()
                .ok_or_else(|| Error::parse(ln, "the first line must be `bounds`"))?;
            if tokens == ["toggles", "active"] {
                scene.toggles_active = true;
                continue;
            }
            let toggle = tokens[0] == "toggle";
            if toggle {
                tokens.remove(0);
            }
            let Some((&kind, rest)) = tokens.split_first() else {
                return Err(Error::parse(ln, "missing obstacle after `toggle`"));
            };
            let nums = parse_numbers(ln, rest)?;
            let d = scene.dim();
            let obstacle = match kind {
                "poly" => {
                    let k = nums.first().copied().unwrap_or(0.0);
                    if k < 3.0 || k.fract() != 0.0 || nums.len() != 1 + 2 * k as usize {
                        return Err(Error::parse(ln, "expected `poly k x1 y1 ... xk yk`"));
                    }
                    ConvexObstacle::polygon(nums[1..].chunks(2).map(|c| [c[0], c[1]]).collect())
                }
                "box" => {
                    if nums.len() != 2 * d {
                        return Err(Error::parse(ln, format!("box needs {} numbers", 2 * d)));
                    }
                    ConvexObstacle::aabb(nums.chunks(2).map(|c| (c[0], c[1])).collect())
                }
                "sphere" => {
                    if nums.len() != d + 1 {
                        return Err(Error::parse(ln, format!("sphere needs {} numbers", d + 1)));
                    }
                    ConvexObstacle::sphere(nums[..d].to_vec(), nums[d])
                }
                other => return Err(Error::parse(ln, format!("unknown obstacle kind `{other}`"))),
            }
            .and_then(|o| scene.add_obstacle(o, toggle))
            .map_err(|e| Error::parse(ln, e.to_string()));
            obstacle?;
        }
        scene.ok_or_else(|| Error::parse(0, "missing `bounds` line"))
    }
}

fn parse_numbers(ln: usize, tokens: &[&str]) -> Result<Vec<f64>> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(ln, format!("bad number `{t}`")))
        })
        .collect()
}

impl SegmentChecker for Scene {
    fn segment_status(&self, a: &Configuration, b: &Configuration) -> Result<EdgeStatus> {
        self.evaluate_segment(a, b)
    }
}

/// A bundled scene together with its query.
#[derive(Debug, Clone)]
pub struct BundledScene {
    pub name: &'static str,
    pub scene: Scene,
    pub start: Configuration,
    pub goal: Configuration,
}

pub const BUNDLED_SCENES: [&str; 4] = ["passage", "rooms", "zigzag", "clutter"];

fn rect(x: (f64, f64), y: (f64, f64)) -> ConvexObstacle {
    ConvexObstacle::rectangle(x, y).expect("bundled rectangles are valid")
}

fn aabb(x: (f64, f64), y: (f64, f64)) -> ConvexObstacle {
    ConvexObstacle::aabb(vec![x, y]).expect("bundled boxes are valid")
}

fn disc(x: f64, y: f64, r: f64) -> ConvexObstacle {
    ConvexObstacle::sphere(vec![x, y], r).expect("bundled spheres are valid")
}

fn tri(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> ConvexObstacle {
    ConvexObstacle::polygon(vec![a, b, c]).expect("bundled triangles are valid")
}

/// Planar unit-square scenes: a narrow passage, four rooms, a zigzag
/// corridor and a cluttered field. Toggles seal every route to the goal.
pub fn bundled_scene(name: &str) -> Option<BundledScene> {
    let unit = vec![(0.0, 1.0), (0.0, 1.0)];
    let mut scene = Scene::new(unit);
    let (name, start, goal, base, toggles): (&'static str, _, _, Vec<_>, Vec<_>) = match name {
        "passage" => (
            "passage",
            [0.1, 0.5],
            [0.9, 0.5],
            vec![rect((0.45, 0.55), (0.0, 0.42)), rect((0.45, 0.55), (0.58, 1.0))],
            vec![rect((0.44, 0.56), (0.40, 0.60))],
        ),
        "rooms" => (
            "rooms",
            [0.15, 0.15],
            [0.85, 0.85],
            vec![
                aabb((0.48, 0.52), (0.0, 0.2)),
                aabb((0.48, 0.52), (0.32, 0.68)),
                aabb((0.48, 0.52), (0.8, 1.0)),
                aabb((0.0, 0.2), (0.48, 0.52)),
                aabb((0.32, 0.68), (0.48, 0.52)),
                aabb((0.8, 1.0), (0.48, 0.52)),
            ],
            vec![aabb((0.47, 0.53), (0.66, 0.82)), aabb((0.66, 0.82), (0.47, 0.53))],
        ),
        "zigzag" => (
            "zigzag",
            [0.5, 0.1],
            [0.5, 0.9],
            vec![
                rect((0.0, 0.8), (0.30, 0.36)),
                rect((0.2, 1.0), (0.64, 0.70)),
                tri([0.4, 0.44], [0.6, 0.44], [0.5, 0.56]),
            ],
            vec![rect((0.78, 1.0), (0.29, 0.37))],
        ),
        "clutter" => (
            "clutter",
            [0.08, 0.08],
            [0.8, 0.8],
            vec![
                disc(0.25, 0.30, 0.08),
                disc(0.45, 0.60, 0.07),
                disc(0.20, 0.75, 0.06),
                disc(0.62, 0.25, 0.08),
                disc(0.42, 0.40, 0.05),
                tri([0.75, 0.05], [0.95, 0.25], [0.72, 0.35]),
                tri([0.05, 0.45], [0.18, 0.50], [0.08, 0.58]),
                tri([0.30, 0.85], [0.45, 0.80], [0.40, 0.95]),
            ],
            vec![
                aabb((0.62, 0.98), (0.62, 0.65)),
                aabb((0.62, 0.98), (0.95, 0.98)),
                aabb((0.62, 0.65), (0.62, 0.98)),
                aabb((0.95, 0.98), (0.62, 0.98)),
            ],
        ),
        _ => return None,
    };
    for o in base {
        scene.add_obstacle(o, false).expect("bundled obstacles fit the bounds");
    }
    for o in toggles {
        scene.add_obstacle(o, true).expect("bundled obstacles fit the bounds");
    }
    Some(BundledScene {
        name,
        scene,
        start: start.into(),
        goal: goal.into(),
    })
}
