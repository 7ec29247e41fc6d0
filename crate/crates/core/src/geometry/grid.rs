use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::UnitDirection;
use crate::error::{Error, Result};

pub const DEFAULT_GRID_2D: usize = 1024;
pub const DEFAULT_LOWDISC_3D: usize = 2048;
pub const DEFAULT_RANDOM_HIGH_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionStrategy {
    /// `±e_i`; the count argument is ignored.
    Axes,
    /// `m` equispaced angles, `p = 2` only.
    Grid2d,
    /// Fibonacci sphere lattice, `p = 3` only.
    Lowdisc,
    /// Seeded normalized Gaussian vectors.
    Random,
}

/// Finite direction set on `S^{p-1}`, deterministic in its arguments.
/// For `p = 1` the whole sphere `{+1, -1}` is returned.
pub fn direction_set(
    dim: usize,
    strategy: DirectionStrategy,
    m: usize,
    seed: u64,
) -> Result<Vec<UnitDirection>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "direction count must be at least 1".into(),
        ));
    }
    if dim == 1 {
        return Ok(vec![UnitDirection::positive_1d(), UnitDirection::negative_1d()]);
    }
    match strategy {
        DirectionStrategy::Axes => Ok((0..dim)
            .flat_map(|i| {
                [
                    UnitDirection::axis(dim, i, true),
                    UnitDirection::axis(dim, i, false),
                ]
            })
            .collect()),
        DirectionStrategy::Grid2d => {
            if dim != 2 {
                return Err(Error::InvalidArgument(format!(
                    "grid2d strategy requires dimension 2, got {dim}"
                )));
            }
            Ok((0..m)
                .map(|k| UnitDirection::from_angle(TAU * k as f64 / m as f64))
                .collect())
        }
        DirectionStrategy::Lowdisc => {
            if dim != 3 {
                return Err(Error::InvalidArgument(format!(
                    "lowdisc strategy requires dimension 3, got {dim}"
                )));
            }
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..m)
                .map(|i| {
                    let z = 1.0 - (2 * i + 1) as f64 / m as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    UnitDirection::new(vec![r * phi.cos(), r * phi.sin(), z])
                })
                .collect()
        }
        DirectionStrategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(m);
            while out.len() < m {
                let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
                if let Ok(u) = UnitDirection::new(v) {
                    out.push(u);
                }
            }
            Ok(out)
        }
    }
}

/// Default direction set for a dimension: `{±1}`, a 1024-angle grid, a
/// 2048-point low-discrepancy set, or 4096 seeded Gaussian directions.
pub fn default_directions(dim: usize) -> Vec<UnitDirection> {
    let (strategy, m) = default_strategy(dim);
    direction_set(dim.max(1), strategy, m, 0).expect("default strategy matches dimension")
}

pub(crate) fn default_strategy(dim: usize) -> (DirectionStrategy, usize) {
    match dim {
        0 | 1 => (DirectionStrategy::Axes, 2),
        2 => (DirectionStrategy::Grid2d, DEFAULT_GRID_2D),
        3 => (DirectionStrategy::Lowdisc, DEFAULT_LOWDISC_3D),
        _ => (DirectionStrategy::Random, DEFAULT_RANDOM_HIGH_DIM),
    }
}
