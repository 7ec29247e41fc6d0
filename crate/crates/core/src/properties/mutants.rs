//! Deliberately broken depth functions. Each one violates at least one
//! axiom, so the harness can be shown to detect failures.

use serde::{Deserialize, Serialize};

use super::DepthFunction;
use crate::depth::{critical_directions, depth, DepthConfig};
use crate::distribution::DiscreteSetDistribution;
use crate::error::Result;
use crate::geometry::{ConvexBody, UnitDirection};
use crate::COMPARISON_TOL;

/// Support value along `e1` above which [`Mutant::OutlierBump`] reports
/// full depth.
pub const OUTLIER_THRESHOLD: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutant {
    /// Depth 1 everywhere; never vanishes (P4a, P4b).
    ConstantOne,
    /// Infimum over directions with a positive first coordinate only; not
    /// invariant under reflections (P1). It also vanishes too late for the
    /// finite P4a window when `K + n·L` leaves the atoms only on the
    /// ignored side.
    IgnoreReflection,
    /// Depth 1 for any body containing every atom; beats the center (P2)
    /// and never vanishes along `K + n·L` when `L` contains the origin
    /// (P4a).
    ContainmentBonus,
    /// Strict inequalities in both tail probabilities; only lower
    /// semicontinuous (P5).
    StrictInequalities,
    /// Depth 1 far out along `e1`; breaks contour convexity (P7) on top of
    /// the Tukey depth's own P3b failure.
    OutlierBump,
}

impl Mutant {
    pub const ALL: [Mutant; 5] = [
        Mutant::ConstantOne,
        Mutant::IgnoreReflection,
        Mutant::ContainmentBonus,
        Mutant::StrictInequalities,
        Mutant::OutlierBump,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mutant::ConstantOne => "constant-one",
            Mutant::IgnoreReflection => "ignore-reflection",
            Mutant::ContainmentBonus => "containment-bonus",
            Mutant::StrictInequalities => "strict-inequalities",
            Mutant::OutlierBump => "outlier-bump",
        }
    }

    pub fn parse(name: &str) -> Option<Mutant> {
        Mutant::ALL.into_iter().find(|m| m.name() == name)
    }
}

fn tukey(body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<f64> {
    Ok(depth(body, dist, &DepthConfig::default())?.value)
}

/// Minimum of `term(P(s_Γ < s_K), P(s_Γ > s_K))` over `dirs`, counting
/// ties within [`COMPARISON_TOL`] in neither tail.
fn strict_min(body: &ConvexBody, dist: &DiscreteSetDistribution, dirs: &[UnitDirection]) -> Result<f64> {
    let mut best = 1.0f64;
    for u in dirs {
        let law = dist.support_law(u)?;
        let x = body.support(u)?;
        let (mut below, mut above) = (0.0, 0.0);
        for (v, w) in law.values().iter().zip(law.weights()) {
            if *v < x - COMPARISON_TOL {
                below += w;
            } else if *v > x + COMPARISON_TOL {
                above += w;
            }
        }
        best = best.min(f64::min(below, above));
    }
    Ok(best)
}

fn inclusive_min(body: &ConvexBody, dist: &DiscreteSetDistribution, dirs: &[UnitDirection]) -> Result<f64> {
    let mut best = 1.0f64;
    for u in dirs {
        let law = dist.support_law(u)?;
        let x = body.support(u)?;
        best = best.min(law.cdf_le(x).min(law.cdf_ge(x)));
    }
    Ok(best)
}

impl DepthFunction for Mutant {
    fn name(&self) -> &str {
        Mutant::name(self)
    }

    fn evaluate(&self, body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<f64> {
        match self {
            Mutant::ConstantOne => Ok(1.0),
            Mutant::IgnoreReflection => {
                let dirs: Vec<UnitDirection> = critical_directions(body, dist)?
                    .into_iter()
                    .filter(|u| u.coords()[0] > 0.0)
                    .collect();
                inclusive_min(body, dist, &dirs)
            }
            Mutant::ContainmentBonus => {
                let dirs = critical_directions(body, dist)?;
                let mut contains = true;
                'outer: for u in &dirs {
                    let s = body.support(u)?;
                    for atom in dist.bodies() {
                        if atom.support(u)? > s + COMPARISON_TOL {
                            contains = false;
                            break 'outer;
                        }
                    }
                }
                if contains {
                    Ok(1.0)
                } else {
                    tukey(body, dist)
                }
            }
            Mutant::StrictInequalities => strict_min(body, dist, &critical_directions(body, dist)?),
            Mutant::OutlierBump => {
                if body.support(&UnitDirection::axis(body.dim(), 0, true))? >= OUTLIER_THRESHOLD {
                    Ok(1.0)
                } else {
                    tukey(body, dist)
                }
            }
        }
    }
}
