//! Convex bodies through their support functions.

mod affine;
mod body;
mod direction;
mod grid;
mod hausdorff;
pub mod hull;
mod serde_repr;

pub use affine::{sphere_map, transpose_norm, AffineMap};
pub use body::ConvexBody;
pub use direction::UnitDirection;
pub(crate) use grid::default_strategy;
pub use grid::{default_directions, direction_set, DirectionStrategy};
pub use hausdorff::{hausdorff, HausdorffMethod, HausdorffReport};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
