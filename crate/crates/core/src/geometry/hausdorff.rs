use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::{default_directions, hull, norm, ConvexBody, UnitDirection};
use crate::error::{Error, Result};

const REFINE_SAMPLES_2D: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum HausdorffMethod {
    Exact,
    /// Supremum over a finite direction set; a lower bound of the true
    /// distance.
    Approx {
        grid: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HausdorffReport {
    pub distance: f64,
    #[serde(flatten)]
    pub method: HausdorffMethod,
}

impl HausdorffReport {
    pub fn is_exact(&self) -> bool {
        self.method == HausdorffMethod::Exact
    }
}

/// Hausdorff distance `sup_u |s_A(u) − s_B(u)|`.
///
/// Exact in dimension 1, between two balls, and between planar polytopal
/// bodies; otherwise the supremum over the default direction grid plus one
/// local refinement pass, tagged as approximate.
pub fn hausdorff(a: &ConvexBody, b: &ConvexBody) -> Result<HausdorffReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let dim = a.dim();
    let exact = |distance| HausdorffReport {
        distance,
        method: HausdorffMethod::Exact,
    };
    if dim == 1 {
        let d = [1.0, -1.0]
            .iter()
            .map(|s| (a.support_vec(&[*s]) - b.support_vec(&[*s])).abs())
            .fold(0.0, f64::max);
        return Ok(exact(d));
    }
    if let (
        ConvexBody::Ball {
            center: c1,
            radius: r1,
        },
        ConvexBody::Ball {
            center: c2,
            radius: r2,
        },
    ) = (a, b)
    {
        let diff: Vec<f64> = c1.iter().zip(c2).map(|(x, y)| x - y).collect();
        return Ok(exact(norm(&diff) + (r1 - r2).abs()));
    }
    if dim == 2 {
        if let (Some(va), Some(vb)) = (a.vertices(), b.vertices()) {
            let ha = hull::hull_2d(&va);
            let hb = hull::hull_2d(&vb);
            let directed = |from: &[Vec<f64>], to: &[Vec<f64>]| {
                from.iter()
                    .map(|p| hull::point_polygon_distance(p, to))
                    .fold(0.0, f64::max)
            };
            return Ok(exact(directed(&ha, &hb).max(directed(&hb, &ha))));
        }
    }
    Ok(grid_hausdorff(a, b))
}

/// Supremum of `|s_A − s_B|` over the default grid with one refinement
/// pass around the best direction.
pub fn grid_hausdorff(a: &ConvexBody, b: &ConvexBody) -> HausdorffReport {
    let dim = a.dim();
    let gap = |v: &[f64]| (a.support_vec(v) - b.support_vec(v)).abs();
    let grid = default_directions(dim);
    let (best_idx, mut best) = grid
        .iter()
        .enumerate()
        .map(|(i, u)| (i, gap(u.coords())))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let center = &grid[best_idx];
    if dim == 2 {
        let theta = center.coords()[1].atan2(center.coords()[0]);
        let h = TAU / grid.len() as f64;
        for k in 0..=REFINE_SAMPLES_2D {
            let t = theta - h + 2.0 * h * k as f64 / REFINE_SAMPLES_2D as f64;
            best = best.max(gap(UnitDirection::from_angle(t).coords()));
        }
    } else if dim > 2 {
        let h = (4.0 * PI / grid.len() as f64).sqrt();
        for scale in [1.0, 0.5, 0.25, 0.125] {
            for i in 0..dim {
                for sign in [1.0, -1.0] {
                    let mut v = center.coords().to_vec();
                    v[i] += sign * scale * h;
                    if let Ok(u) = UnitDirection::new(v) {
                        best = best.max(gap(u.coords()));
                    }
                }
            }
        }
    }
    HausdorffReport {
        distance: best,
        method: HausdorffMethod::Approx { grid: grid.len() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> ConvexBody {
        ConvexBody::interval(a, b).unwrap()
    }

    #[test]
    fn intervals_from_the_counterexample() {
        assert_eq!(hausdorff(&iv(1.0, 2.0), &iv(2.0, 7.0)).unwrap().distance, 5.0);
        assert_eq!(hausdorff(&iv(1.0, 2.0), &iv(3.0, 5.0)).unwrap().distance, 3.0);
        assert_eq!(hausdorff(&iv(2.0, 7.0), &iv(3.0, 5.0)).unwrap().distance, 2.0);
        assert!(hausdorff(&iv(1.0, 2.0), &iv(2.0, 7.0)).unwrap().is_exact());
    }

    #[test]
    fn identical_bodies_are_at_distance_zero() {
        let bodies = [
            iv(-1.0, 4.0),
            ConvexBody::square(1.0, 2.0, 3.0).unwrap(),
            ConvexBody::ball(vec![1.0, 2.0, 3.0], 0.5).unwrap(),
            ConvexBody::boxed(vec![0.0; 3], vec![1.0; 3]).unwrap(),
        ];
        for k in &bodies {
            assert_eq!(hausdorff(k, k).unwrap().distance, 0.0);
        }
    }

    #[test]
    fn balls() {
        let a = ConvexBody::ball(vec![0.0, 0.0, 0.0], 1.0).unwrap();
        let b = ConvexBody::ball(vec![3.0, 4.0, 0.0], 3.0).unwrap();
        assert_eq!(hausdorff(&a, &b).unwrap().distance, 7.0);
    }

    #[test]
    fn planar_polytopes_exact() {
        let a = ConvexBody::square(0.0, 0.0, 1.0).unwrap();
        let b = ConvexBody::square(3.0, 4.0, 1.0).unwrap();
        assert!((hausdorff(&a, &b).unwrap().distance - 5.0).abs() < 1e-12);
        // point inside a square: farthest square vertex
        let p = ConvexBody::point(vec![0.5, 0.5]).unwrap();
        assert!((hausdorff(&a, &p).unwrap().distance - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn grid_estimate_is_a_lower_bound() {
        let a = ConvexBody::polytope(vec![vec![0.0, 0.0], vec![2.0, 0.3], vec![0.4, 1.7]]).unwrap();
        let b = ConvexBody::polytope(vec![vec![1.0, -1.0], vec![1.5, 2.0]]).unwrap();
        let exact = hausdorff(&a, &b).unwrap();
        let approx = grid_hausdorff(&a, &b);
        assert!(approx.distance <= exact.distance + 1e-12);
        assert!(exact.distance - approx.distance < 1e-3);
        assert_eq!(approx.method, HausdorffMethod::Approx { grid: 1024 });
    }

    #[test]
    fn mismatched_dimensions() {
        let err = hausdorff(&iv(0.0, 1.0), &ConvexBody::square(0.0, 0.0, 1.0).unwrap());
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }
}
