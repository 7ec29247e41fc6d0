//! Tukey depth of compact convex sets.
//!
//! `D(K; Γ) = inf_u min{P(s_Γ(u) ≤ s_K(u)), P(s_Γ(u) ≥ s_K(u))}`, computed
//! exactly on `{+1, -1}` for `p = 1`, exactly by arc decomposition of the
//! circle for planar polytopes, and as an upper bound over a finite
//! direction set otherwise.

mod exact2d;

use serde::{Deserialize, Serialize};

use crate::distribution::{DirectionalLaw, DiscreteSetDistribution};
use crate::error::{Error, Result};
use crate::geometry::{default_strategy, ConvexBody, UnitDirection};

pub use crate::geometry::{direction_set, DirectionStrategy};
pub use exact2d::depth_poly2d_exact;

/// Which engine [`depth`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DepthConfig {
    pub method: Method,
    /// Direction budget for the sampled engine; the per-dimension default
    /// grid size when `None`.
    pub directions: Option<usize>,
    pub seed: u64,
    /// Slack for contour membership, `depth >= alpha - tolerance`.
    pub tolerance: f64,
}

impl Default for DepthConfig {
    fn default() -> Self {
        Self {
            method: Method::Auto,
            directions: None,
            seed: 0,
            tolerance: 1e-12,
        }
    }
}

impl DepthConfig {
    pub fn sampled(m: usize, seed: u64) -> Self {
        Self {
            method: Method::Sampled,
            directions: Some(m),
            seed,
            ..Self::default()
        }
    }
}

/// Which tail probability attains the minimum at the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `P(s_Γ(u) ≤ s_K(u))`
    Le,
    /// `P(s_Γ(u) ≥ s_K(u))`
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthMethod {
    Exact1d,
    Exact2d,
    /// Minimum over a finite direction set: an upper bound of the depth.
    Sampled,
}

/// Depth value with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportRepr", from = "ReportRepr")]
pub struct DepthReport {
    pub value: f64,
    pub witness_direction: UnitDirection,
    pub witness_side: Side,
    pub method: DepthMethod,
    pub directions_used: usize,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    direction: UnitDirection,
    side: Side,
}

#[derive(Serialize, Deserialize)]
struct ReportRepr {
    value: f64,
    witness: WitnessRepr,
    method: DepthMethod,
    directions_used: usize,
}

impl From<DepthReport> for ReportRepr {
    fn from(r: DepthReport) -> Self {
        ReportRepr {
            value: r.value,
            witness: WitnessRepr {
                direction: r.witness_direction,
                side: r.witness_side,
            },
            method: r.method,
            directions_used: r.directions_used,
        }
    }
}

impl From<ReportRepr> for DepthReport {
    fn from(r: ReportRepr) -> Self {
        DepthReport {
            value: r.value,
            witness_direction: r.witness.direction,
            witness_side: r.witness.side,
            method: r.method,
            directions_used: r.directions_used,
        }
    }
}

/// Univariate halfspace depth `min{P(X ≤ x), P(X ≥ x)}` with both
/// inequalities inclusive.
pub fn halfspace_depth_1d(x: f64, law: &DirectionalLaw) -> f64 {
    law.cdf_le(x).min(law.cdf_ge(x))
}

fn check_dims(body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<()> {
    if body.dim() != dist.dim() {
        return Err(Error::DimensionMismatch {
            expected: dist.dim(),
            found: body.dim(),
        });
    }
    Ok(())
}

/// Directional term at one direction, with the side that attains it.
pub(crate) fn evaluate_direction(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
    u: &UnitDirection,
) -> Result<(f64, Side)> {
    let law = dist.support_law(u)?;
    let x = body.support(u)?;
    let (le, ge) = (law.cdf_le(x), law.cdf_ge(x));
    Ok(if le <= ge { (le, Side::Le) } else { (ge, Side::Ge) })
}

/// Minimum over `directions` with the lowest-index witness on ties.
fn minimize<'a>(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
    directions: impl IntoIterator<Item = &'a UnitDirection>,
    method: DepthMethod,
) -> Result<DepthReport> {
    let mut best: Option<(f64, Side, &UnitDirection)> = None;
    let mut used = 0;
    for u in directions {
        used += 1;
        let (value, side) = evaluate_direction(body, dist, u)?;
        if best.is_none_or(|(b, _, _)| value < b) {
            best = Some((value, side, u));
        }
    }
    let (value, side, u) = best.ok_or_else(|| Error::InvalidArgument("empty direction set".into()))?;
    Ok(DepthReport {
        value,
        witness_direction: u.clone(),
        witness_side: side,
        method,
        directions_used: used,
    })
}

/// Exact depth for `p = 1`, where the sphere is `{+1, -1}`. Any body kind
/// is accepted since only its two support values matter.
pub fn depth_interval_exact(body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<DepthReport> {
    check_dims(body, dist)?;
    if body.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: body.dim(),
        });
    }
    let dirs = [UnitDirection::positive_1d(), UnitDirection::negative_1d()];
    minimize(body, dist, &dirs, DepthMethod::Exact1d)
}

/// Minimum over the supplied directions: an upper bound of the depth,
/// non-increasing as the direction set grows.
pub fn depth_sampled(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
    directions: &[UnitDirection],
) -> Result<DepthReport> {
    check_dims(body, dist)?;
    minimize(body, dist, directions, DepthMethod::Sampled)
}

/// Directions on which every tail probability pattern of `(body, dist)` is
/// represented: `{±1}` for `p = 1`, event angles and arc midpoints for
/// planar polytopes, the default grid otherwise.
pub(crate) fn critical_directions(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
) -> Result<Vec<UnitDirection>> {
    check_dims(body, dist)?;
    if body.dim() == 1 {
        Ok(vec![UnitDirection::positive_1d(), UnitDirection::negative_1d()])
    } else if exact_available(body, dist) {
        exact2d::planar_directions(body, dist)
    } else {
        Ok(crate::geometry::default_directions(body.dim()))
    }
}

fn exact_available(body: &ConvexBody, dist: &DiscreteSetDistribution) -> bool {
    match body.dim() {
        1 => true,
        2 => body.is_polytopal() && dist.bodies().all(ConvexBody::is_polytopal),
        _ => false,
    }
}

/// Tukey depth of `body` with respect to `dist`.
///
/// `Auto` uses the exact engines when they apply (`p = 1`, or `p = 2` with
/// polytopal bodies) and the sampled estimator otherwise. `Exact` fails with
/// [`Error::NeedsSampling`] where no exact engine applies.
pub fn depth(body: &ConvexBody, dist: &DiscreteSetDistribution, config: &DepthConfig) -> Result<DepthReport> {
    check_dims(body, dist)?;
    let exact = exact_available(body, dist);
    match (config.method, body.dim()) {
        (Method::Auto | Method::Exact, 1) => depth_interval_exact(body, dist),
        (Method::Auto | Method::Exact, 2) if exact => depth_poly2d_exact(body, dist),
        (Method::Exact, _) => Err(Error::NeedsSampling("depth")),
        _ => {
            let (strategy, default_m) = default_strategy(body.dim());
            let m = config.directions.unwrap_or(default_m);
            let dirs = direction_set(body.dim(), strategy, m, config.seed)?;
            depth_sampled(body, dist, &dirs)
        }
    }
}

/// Interval maximizing the depth of a one-dimensional law: the lower
/// weighted medians of the left and right endpoints.
pub fn tukey_median_1d(dist: &DiscreteSetDistribution) -> Result<ConvexBody> {
    if dist.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: dist.dim(),
        });
    }
    let up = UnitDirection::positive_1d();
    let weights: Vec<f64> = dist.atoms().iter().map(|a| a.weight).collect();
    let counts = dist.counts().map(<[u64]>::to_vec);
    let lefts = dist.bodies().map(|b| -b.support_vec(&[-1.0])).collect();
    let rights = dist.bodies().map(|b| b.support_vec(&[1.0])).collect();
    let a = DirectionalLaw::from_parts(up.clone(), lefts, weights.clone(), counts.clone()).lower_median();
    let b = DirectionalLaw::from_parts(up, rights, weights, counts).lower_median();
    ConvexBody::interval(a, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedBody {
    /// Position in the input sequence.
    pub index: usize,
    pub body: ConvexBody,
    pub report: DepthReport,
}

/// Bodies sorted by depth, deepest first; ties keep input order.
pub fn rank(
    bodies: &[ConvexBody],
    dist: &DiscreteSetDistribution,
    config: &DepthConfig,
) -> Result<Vec<RankedBody>> {
    if bodies.is_empty() {
        return Err(Error::InvalidArgument("nothing to rank".into()));
    }
    let mut ranked = bodies
        .iter()
        .enumerate()
        .map(|(index, body)| {
            Ok(RankedBody {
                index,
                body: body.clone(),
                report: depth(body, dist, config)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|x, y| y.report.value.total_cmp(&x.report.value));
    Ok(ranked)
}

/// Whether `body` lies in the depth contour `{K : D(K; Γ) ≥ α}`.
pub fn contour_membership(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
    alpha: f64,
    config: &DepthConfig,
) -> Result<bool> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} outside [0, 1]")));
    }
    Ok(depth(body, dist, config)?.value >= alpha - config.tolerance)
}
