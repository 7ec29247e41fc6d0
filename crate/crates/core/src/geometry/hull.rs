//! Planar convex hulls and the few primitives built on them.

use std::f64::consts::TAU;

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Extreme points of a planar point set in counter-clockwise order
/// (monotone chain). Collinear points are dropped; a single point or a
/// segment yields one or two vertices.
pub fn hull_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Vec<f64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Angles in `[0, 2π)` of the outward edge normals of a CCW hull. These
/// are the breakpoints of the support function; between two consecutive
/// ones a single vertex attains the maximum.
pub fn edge_normal_angles(hull: &[Vec<f64>]) -> Vec<f64> {
    if hull.len() < 2 {
        return Vec::new();
    }
    (0..hull.len())
        .map(|i| {
            let p = &hull[i];
            let q = &hull[(i + 1) % hull.len()];
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            normalize_angle(f64::atan2(-dx, dy))
        })
        .collect()
}

pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let dist = |q: &[f64]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2
    };
    // endpoints are measured directly so that a vertex has distance 0
    if t <= 0.0 {
        dist(a)
    } else if t >= 1.0 {
        dist(b)
    } else {
        dist(&[a[0] + t * dx, a[1] + t * dy]).min(dist(a)).min(dist(b))
    }
}

/// Euclidean distance from `p` to the convex polygon with CCW vertices
/// `hull` (zero inside).
pub fn point_polygon_distance(p: &[f64], hull: &[Vec<f64>]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => ((p[0] - hull[0][0]).powi(2) + (p[1] - hull[0][1]).powi(2)).sqrt(),
        2 => point_segment_distance(p, &hull[0], &hull[1]),
        n => {
            let inside = (0..n).all(|i| cross(&hull[i], &hull[(i + 1) % n], p) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..n)
                .map(|i| point_segment_distance(p, &hull[i], &hull[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}
