//! Straight-segment intersection tests against convex primitives.
//!
//! Contact counts as intersection everywhere in this module.

const DISCRIMINANT_TOLERANCE: f64 = 1e-12;

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// `r` lies within the bounding box of `p q` (used once collinearity is known).
fn within_box(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> bool {
    r[0] >= p[0].min(q[0]) && r[0] <= p[0].max(q[0]) && r[1] >= p[1].min(q[1]) && r[1] <= p[1].max(q[1])
}

pub fn point_on_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    cross(a, b, p) == 0.0 && within_box(a, b, p)
}

/// Closed segments `p1 q1` and `p2 q2` share at least one point.
pub fn segments_intersect(p1: [f64; 2], q1: [f64; 2], p2: [f64; 2], q2: [f64; 2]) -> bool {
    let o1 = sign(cross(p1, q1, p2));
    let o2 = sign(cross(p1, q1, q2));
    let o3 = sign(cross(p2, q2, p1));
    let o4 = sign(cross(p2, q2, q1));

    if o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 {
        return true;
    }
    (o1 == 0 && within_box(p1, q1, p2))
        || (o2 == 0 && within_box(p1, q1, q2))
        || (o3 == 0 && within_box(p2, q2, p1))
        || (o4 == 0 && within_box(p2, q2, q1))
}

/// Ray casting; points on the boundary are inside.
pub fn point_in_polygon(p: [f64; 2], polygon: &[[f64; 2]]) -> bool {
    let n = polygon.len();
    let mut inside = false;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if point_on_segment(p, a, b) {
            return true;
        }
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn segment_hits_polygon(a: [f64; 2], b: [f64; 2], polygon: &[[f64; 2]]) -> bool {
    if point_in_polygon(a, polygon) || point_in_polygon(b, polygon) {
        return true;
    }
    let n = polygon.len();
    (0..n).any(|i| segments_intersect(a, b, polygon[i], polygon[(i + 1) % n]))
}

/// Slab method against the closed box `bounds[i] = (lo, hi)`.
pub fn segment_hits_box(a: &[f64], b: &[f64], bounds: &[(f64, f64)]) -> bool {
    let mut t_enter: f64 = 0.0;
    let mut t_exit: f64 = 1.0;
    for (i, &(lo, hi)) in bounds.iter().enumerate() {
        let d = b[i] - a[i];
        if d == 0.0 {
            if a[i] < lo || a[i] > hi {
                return false;
            }
            continue;
        }
        let mut t1 = (lo - a[i]) / d;
        let mut t2 = (hi - a[i]) / d;
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        t_enter = t_enter.max(t1);
        t_exit = t_exit.min(t2);
        if t_enter > t_exit {
            return false;
        }
    }
    true
}

/// Solves `|a + t (b - a) - c|^2 = r^2` and checks the root interval
/// against `[0, 1]`.
pub fn segment_hits_sphere(a: &[f64], b: &[f64], center: &[f64], radius: f64) -> bool {
    let mut qa = 0.0;
    let mut qb = 0.0;
    let mut qc = -radius * radius;
    for i in 0..a.len() {
        let d = b[i] - a[i];
        let f = a[i] - center[i];
        qa += d * d;
        qb += 2.0 * d * f;
        qc += f * f;
    }
    if qa == 0.0 {
        return qc <= 0.0;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < -DISCRIMINANT_TOLERANCE {
        return false;
    }
    let root = disc.max(0.0).sqrt();
    let t1 = (-qb - root) / (2.0 * qa);
    let t2 = (-qb + root) / (2.0 * qa);
    t1 <= 1.0 && t2 >= 0.0
}

pub fn signed_area(polygon: &[[f64; 2]]) -> f64 {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let a = polygon[i];
            let b = polygon[(i + 1) % n];
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        / 2.0
}

/// Counterclockwise, strictly positive area, no reflex corners.
pub fn is_convex_ccw(polygon: &[[f64; 2]]) -> bool {
    let n = polygon.len();
    if n < 3 || signed_area(polygon) <= 0.0 {
        return false;
    }
    (0..n).all(|i| cross(polygon[i], polygon[(i + 1) % n], polygon[(i + 2) % n]) >= 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: [[f64; 2]; 3] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];

    #[test]
    fn crossing_and_touching_segments() {
        assert!(segments_intersect([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]));
        // T-junction contact
        assert!(segments_intersect([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 1.0]));
        // collinear overlap
        assert!(segments_intersect([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [3.0, 0.0]));
        assert!(!segments_intersect([0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]));
        assert!(!segments_intersect([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]));
    }

    #[test]
    fn point_in_triangle() {
        assert!(point_in_polygon([0.2, 0.2], &TRIANGLE));
        assert!(point_in_polygon([0.5, 0.5], &TRIANGLE));
        assert!(point_in_polygon([0.0, 0.0], &TRIANGLE));
        assert!(!point_in_polygon([0.6, 0.6], &TRIANGLE));
        assert!(!point_in_polygon([-0.1, 0.5], &TRIANGLE));
    }

    #[test]
    fn segment_versus_triangle() {
        assert!(segment_hits_polygon([-1.0, 0.3], [1.0, 0.3], &TRIANGLE));
        assert!(segment_hits_polygon([0.1, 0.1], [0.2, 0.2], &TRIANGLE));
        assert!(!segment_hits_polygon([2.0, 2.0], [3.0, 3.0], &TRIANGLE));
        // grazes the vertex at (1, 0)
        assert!(segment_hits_polygon([1.0, -1.0], [1.0, 1.0], &TRIANGLE));
    }

    #[test]
    fn slab_box() {
        let unit = [(0.0, 1.0), (0.0, 1.0)];
        assert!(segment_hits_box(&[-1.0, 0.5], &[2.0, 0.5], &unit));
        assert!(segment_hits_box(&[0.2, 0.2], &[0.3, 0.3], &unit));
        assert!(segment_hits_box(&[1.0, -1.0], &[1.0, 2.0], &unit));
        assert!(!segment_hits_box(&[1.5, -1.0], &[1.5, 2.0], &unit));
        assert!(!segment_hits_box(&[-1.0, 0.5], &[-0.5, 0.5], &unit));
        assert!(!segment_hits_box(&[0.0, 2.0], &[2.0, 0.5], &unit));
    }

    #[test]
    fn sphere_discriminant() {
        let c = [0.0, 0.0, 0.0];
        assert!(segment_hits_sphere(&[-2.0, 0.0, 0.0], &[2.0, 0.0, 0.0], &c, 1.0));
        assert!(segment_hits_sphere(&[-2.0, 1.0, 0.0], &[2.0, 1.0, 0.0], &c, 1.0));
        assert!(!segment_hits_sphere(&[-2.0, 1.5, 0.0], &[2.0, 1.5, 0.0], &c, 1.0));
        assert!(!segment_hits_sphere(&[2.0, 0.0, 0.0], &[3.0, 0.0, 0.0], &c, 1.0));
        assert!(segment_hits_sphere(&[0.1, 0.0, 0.0], &[0.2, 0.0, 0.0], &c, 1.0));
        assert!(segment_hits_sphere(&[0.5, 0.0, 0.0], &[0.5, 0.0, 0.0], &c, 1.0));
    }

    #[test]
    fn convexity_check() {
        assert!(is_convex_ccw(&TRIANGLE));
        let cw: Vec<[f64; 2]> = TRIANGLE.iter().rev().copied().collect();
        assert!(!is_convex_ccw(&cw));
        let reflex = [[0.0, 0.0], [2.0, 0.0], [1.0, 0.5], [2.0, 2.0], [0.0, 2.0]];
        assert!(!is_convex_ccw(&reflex));
        assert!(!is_convex_ccw(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]));
    }
}
