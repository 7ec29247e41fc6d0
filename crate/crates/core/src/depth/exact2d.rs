//! Exact planar depth by arc decomposition of the circle.
//!
//! For polytopes every `g_j(θ) = s_{X_j}(θ) − s_K(θ)` is piecewise a single
//! sinusoid `<v − w, (cos θ, sin θ)>`, where `v` and `w` are the maximizing
//! vertices of the atom and of `K`. The maximizers only change at outward
//! edge normals, so on each piece the sign of `g_j` can only change at the
//! two roots of that sinusoid. Collecting all edge normals and all roots that
//! fall inside their piece yields finitely many event angles; both tail
//! probabilities are constant on every open arc between consecutive events.
//! The infimum is then the minimum over arc midpoints and event angles.

use std::f64::consts::{FRAC_PI_2, TAU};

use super::{minimize, DepthMethod, DepthReport};
use crate::distribution::DiscreteSetDistribution;
use crate::error::{Error, Result};
use crate::geometry::hull::{edge_normal_angles, hull_2d, normalize_angle};
use crate::geometry::{ConvexBody, UnitDirection};

/// Event angles closer than this are merged.
pub const EVENT_DEDUP_TOL: f64 = 1e-12;

fn planar_hull(body: &ConvexBody) -> Result<Vec<Vec<f64>>> {
    body.vertices()
        .map(|v| hull_2d(&v))
        .ok_or(Error::NeedsSampling("depth_poly2d_exact"))
}

fn active_vertex(hull: &[Vec<f64>], theta: f64) -> &[f64] {
    let (s, c) = theta.sin_cos();
    hull.iter()
        .max_by(|p, q| (p[0] * c + p[1] * s).total_cmp(&(q[0] * c + q[1] * s)))
        .expect("nonempty hull")
}

fn sorted(mut angles: Vec<f64>) -> Vec<f64> {
    angles.sort_by(f64::total_cmp);
    angles
}

/// Event angles in `[0, 2π)`, sorted and deduplicated.
pub(crate) fn event_angles(body_hull: &[Vec<f64>], atom_hulls: &[Vec<Vec<f64>>]) -> Vec<f64> {
    let body_breaks = edge_normal_angles(body_hull);
    let mut events = body_breaks.clone();
    events.push(0.0);
    for hull in atom_hulls {
        let atom_breaks = edge_normal_angles(hull);
        let mut cuts = body_breaks.clone();
        cuts.extend(&atom_breaks);
        cuts.push(0.0);
        cuts.push(TAU);
        let cuts = sorted(cuts);
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi <= lo {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            let v = active_vertex(hull, mid);
            let k = active_vertex(body_hull, mid);
            let (dx, dy) = (v[0] - k[0], v[1] - k[1]);
            if dx == 0.0 && dy == 0.0 {
                // identical maximizers: g_j vanishes on the whole piece
                continue;
            }
            let phi = dy.atan2(dx);
            for root in [phi + FRAC_PI_2, phi - FRAC_PI_2] {
                let r = normalize_angle(root);
                for candidate in [r, r + TAU] {
                    if candidate >= lo - EVENT_DEDUP_TOL && candidate <= hi + EVENT_DEDUP_TOL {
                        events.push(normalize_angle(candidate));
                    }
                }
            }
        }
        events.extend(atom_breaks);
    }
    let events = sorted(events);
    let mut out: Vec<f64> = Vec::with_capacity(events.len());
    for e in events {
        if out.last().is_none_or(|last| e - last > EVENT_DEDUP_TOL) {
            out.push(e);
        }
    }
    while out.len() > 1 && TAU - out[out.len() - 1] <= EVENT_DEDUP_TOL {
        out.pop();
    }
    out
}

/// Evaluation angles: every event angle followed by the midpoint of the
/// arc to the next event (wrapping around).
pub(crate) fn evaluation_angles(events: &[f64]) -> Vec<f64> {
    let n = events.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let next = if i + 1 < n { events[i + 1] } else { events[0] + TAU };
        out.push(events[i]);
        out.push(normalize_angle(0.5 * (events[i] + next)));
    }
    out
}

/// Event angles and arc midpoints as directions; both tail probabilities
/// are constant on the arcs between consecutive entries.
pub(crate) fn planar_directions(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
) -> Result<Vec<UnitDirection>> {
    let body_hull = planar_hull(body)?;
    let atom_hulls = dist.bodies().map(planar_hull).collect::<Result<Vec<_>>>()?;
    let events = event_angles(&body_hull, &atom_hulls);
    Ok(evaluation_angles(&events)
        .into_iter()
        .map(UnitDirection::from_angle)
        .collect())
}

/// Exact depth of a planar polytopal body with respect to a law with
/// polytopal atoms. Composite or ball inputs yield
/// [`Error::NeedsSampling`].
pub fn depth_poly2d_exact(body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<DepthReport> {
    for dim in [body.dim(), dist.dim()] {
        if dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: dim,
            });
        }
    }
    let directions = planar_directions(body, dist)?;
    minimize(body, dist, &directions, DepthMethod::Exact2d)
}
