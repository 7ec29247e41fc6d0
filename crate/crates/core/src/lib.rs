//! Tukey (halfspace) depth for compact convex sets.
//!
//! Bodies are represented through their support functions, distributions of
//! random sets are finitely supported, and depth is the infimum over unit
//! directions of the univariate halfspace depth of the support value
//! `s_K(u)` with respect to the law of `s_Γ(u)`.
//!
//! - [`geometry`]: convex bodies, support functions, Minkowski algebra,
//!   affine images and the Hausdorff metric.
//! - [`distribution`]: finitely supported set-valued laws, sampling and
//!   directional marginals.
//! - [`depth`]: exact engines for `p = 1` and `p = 2`, the sampled
//!   estimator, medians, ranking and contour membership.
//! - [`properties`]: mechanical checks of the depth axioms P1–P7 and the
//!   taxonomy classifier.

pub mod depth;
pub mod distribution;
mod error;
pub mod geometry;
pub mod properties;

pub use depth::{
    contour_membership, depth, depth_interval_exact, depth_poly2d_exact, depth_sampled, halfspace_depth_1d,
    rank, tukey_median_1d, DepthConfig, DepthMethod, DepthReport, Method, RankedBody, Side,
};
pub use distribution::{Atom, DirectionalLaw, DiscreteSetDistribution};
pub use error::{Error, Result};
pub use geometry::{
    direction_set, hausdorff, sphere_map, AffineMap, ConvexBody, DirectionStrategy, HausdorffMethod,
    HausdorffReport, UnitDirection,
};
pub use properties::{
    classify, run_suite, DepthFunction, Label, PropertyId, PropertyReport, Scenario, SuiteConfig,
    SuiteReport, TukeyDepth, Verdict,
};

/// Absolute tolerance for floating comparisons inside the combinatorial
/// algorithms (support-value ties, range exits).
pub const COMPARISON_TOL: f64 = 1e-9;
