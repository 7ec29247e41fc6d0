//! Seeded generators for bodies, matrices and scenario probes.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::distribution::DiscreteSetDistribution;
use crate::geometry::{AffineMap, ConvexBody, UnitDirection};

/// Mixes a base seed with stream identifiers (splitmix64 finalizer).
pub fn sub_seed(seed: u64, stream: &[u64]) -> u64 {
    let mut z = seed;
    for s in stream {
        z = z.wrapping_add(s.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

/// Axis-aligned bounding region `[lo_i, hi_i]` of a law's atoms.
#[derive(Debug, Clone)]
pub struct Region {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Region {
    pub fn of(dist: &DiscreteSetDistribution) -> Self {
        let dim = dist.dim();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for body in dist.bodies() {
            for i in 0..dim {
                hi[i] = hi[i].max(body.support_vec(UnitDirection::axis(dim, i, true).coords()));
                lo[i] = lo[i].min(-body.support_vec(UnitDirection::axis(dim, i, false).coords()));
            }
        }
        Self { lo, hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Largest side length, at least 1.
    pub fn span(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| h - l)
            .fold(1.0, f64::max)
    }

    /// Uniform point in the region enlarged by `margin` on every side.
    pub fn point(&self, rng: &mut ChaCha8Rng, margin: f64) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| rng.random_range((l - margin)..=(h + margin)))
            .collect()
    }
}

/// Random body of the given dimension around `center` with extent up to
/// `size`: an interval for `p = 1`, a polygon with 1–5 vertices for
/// `p = 2`, a box otherwise.
pub fn body_around(rng: &mut ChaCha8Rng, center: &[f64], size: f64) -> ConvexBody {
    match center.len() {
        1 => {
            let a = center[0] - rng.random_range(0.0..=size);
            let b = center[0] + rng.random_range(0.0..=size);
            ConvexBody::interval(a, b).expect("ordered endpoints")
        }
        2 => {
            let k = rng.random_range(1..=5);
            let vertices = (0..k)
                .map(|_| {
                    vec![
                        center[0] + rng.random_range(-size..=size),
                        center[1] + rng.random_range(-size..=size),
                    ]
                })
                .collect();
            ConvexBody::polytope(vertices)
                .expect("finite vertices")
                .normalized()
        }
        _ => {
            let min: Vec<f64> = center.iter().map(|c| c - rng.random_range(0.0..=size)).collect();
            let max: Vec<f64> = center.iter().map(|c| c + rng.random_range(0.0..=size)).collect();
            ConvexBody::boxed(min, max).expect("ordered box")
        }
    }
}

/// Random body placed in the (enlarged) region of a law.
pub fn body_in(rng: &mut ChaCha8Rng, region: &Region) -> ConvexBody {
    let span = region.span();
    let c = region.point(rng, 0.5 * span);
    body_around(rng, &c, 0.5 * span)
}

/// Random body that is not `{0}`.
pub fn nonzero_body(rng: &mut ChaCha8Rng, dim: usize, size: f64) -> ConvexBody {
    loop {
        let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-size..=size)).collect();
        let body = body_around(rng, &c, size);
        if !body.is_origin(1e-6) {
            return body;
        }
    }
}

/// Random square matrix with entries in `[-2, 2]` and condition number at
/// most `max_condition`.
pub fn nonsingular_matrix(rng: &mut ChaCha8Rng, dim: usize, max_condition: f64) -> DMatrix<f64> {
    loop {
        let m = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-2.0..=2.0));
        let sv = m.singular_values();
        let (smax, smin) = (sv.max(), sv.min());
        if smin > 0.0 && smax / smin <= max_condition {
            return m;
        }
    }
}

/// Random affine map `K ↦ M·K + L` with a well-conditioned `M`.
pub fn affine_map(rng: &mut ChaCha8Rng, dim: usize, size: f64) -> AffineMap {
    let m = nonsingular_matrix(rng, dim, 1e3);
    let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-size..=size)).collect();
    let l = body_around(rng, &c, 0.25 * size);
    AffineMap::new(m, l).expect("nonsingular matrix")
}
