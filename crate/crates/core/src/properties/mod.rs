//! Mechanical checks of the depth axioms P1–P7.
//!
//! Every runner is generic over a [`DepthFunction`] so that deliberately
//! broken evaluators ([`mutants`]) can be fed through the same harness. The
//! limit statements (P4, P5, P6) are checked through finite necessary
//! conditions with reported horizons; a pass is evidence, not a proof.

mod affine;
mod center;
mod consistency;
mod continuity;
mod convexity;
pub mod mutants;
pub mod random;
mod suite;
mod vanishing;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::depth::{depth, tukey_median_1d, DepthConfig, Method};
use crate::distribution::{is_compact_symmetric, two_atom_symmetric_center, DiscreteSetDistribution};
use crate::error::{Error, Result};
use crate::geometry::{default_directions, AffineMap, ConvexBody};

pub use affine::{run_p1, sampled_affine_pair};
pub use center::{run_p2, run_p3a, run_p3b};
pub use consistency::{consistency_experiment, dkw_bound, run_p6, ConvergenceRow, ConvergenceTable};
pub use continuity::{run_p5, upper_semicontinuity_horizon, UscOutcome};
pub use convexity::run_p7;
pub use suite::{run_suite, SuiteConfig, SuiteReport};
pub use vanishing::{run_p4, vanishing_threshold, P4Variant};

/// A depth function `D(·; Γ)` under test.
pub trait DepthFunction: Sync {
    fn name(&self) -> &str;

    fn evaluate(&self, body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<f64>;

    /// Slack allowed when two depth values are compared; zero for exact
    /// engines.
    fn tolerance(&self) -> f64 {
        0.0
    }
}

/// The Tukey depth of compact convex sets, through [`depth`].
#[derive(Debug, Clone, Default)]
pub struct TukeyDepth {
    pub config: DepthConfig,
}

impl DepthFunction for TukeyDepth {
    fn name(&self) -> &str {
        "tukey"
    }

    fn evaluate(&self, body: &ConvexBody, dist: &DiscreteSetDistribution) -> Result<f64> {
        Ok(depth(body, dist, &self.config)?.value)
    }

    fn tolerance(&self) -> f64 {
        if self.config.method == Method::Sampled {
            1e-9
        } else {
            0.0
        }
    }
}

pub(crate) fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidArgument(format!(
            "{what}: non-finite depth {value}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropertyId {
    P1,
    P2,
    P3a,
    P3b,
    P4a,
    P4b,
    P5,
    P6,
    P7,
}

impl PropertyId {
    pub const ALL: [PropertyId; 9] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3a,
        PropertyId::P3b,
        PropertyId::P4a,
        PropertyId::P4b,
        PropertyId::P5,
        PropertyId::P6,
        PropertyId::P7,
    ];
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// A finite set-valued law together with extra bodies of interest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub dist: DiscreteSetDistribution,
    #[serde(default)]
    pub bodies: Vec<ConvexBody>,
}

impl Scenario {
    pub fn new(id: impl Into<String>, dist: DiscreteSetDistribution, bodies: Vec<ConvexBody>) -> Self {
        Self {
            id: id.into(),
            dist,
            bodies,
        }
    }

    pub fn dim(&self) -> usize {
        self.dist.dim()
    }

    /// A body known to maximize the Tukey depth: the median interval when
    /// `p = 1`, the single atom of a point mass, or the Minkowski midpoint
    /// of a uniform two-atom law.
    pub fn certified_maximizer(&self) -> Option<ConvexBody> {
        let atoms = self.dist.atoms();
        if self.dim() == 1 {
            return tukey_median_1d(&self.dist).ok();
        }
        match atoms {
            [only] => Some(only.body.clone()),
            [a, b] if a.weight == b.weight => two_atom_symmetric_center(&a.body, &b.body).ok(),
            _ => None,
        }
    }

    /// A maximizer about which the law is compact-symmetric on the default
    /// direction set (the whole sphere when `p = 1`). Candidates are the
    /// median interval, the single atom, and the Minkowski midpoint of two
    /// equally weighted atoms.
    pub fn certified_center(&self) -> Option<ConvexBody> {
        let dirs = default_directions(self.dim());
        let mut candidates: Vec<ConvexBody> = self.certified_maximizer().into_iter().collect();
        if let [a, b] = self.dist.atoms() {
            if a.weight == b.weight {
                candidates.extend(two_atom_symmetric_center(&a.body, &b.body).ok());
            }
        }
        candidates
            .into_iter()
            .find(|c| is_compact_symmetric(&self.dist, c, &dirs, crate::COMPARISON_TOL).unwrap_or(false))
    }

    /// Whether the exact engines cover every body of the scenario.
    pub(crate) fn exact_engine(&self) -> bool {
        match self.dim() {
            1 => true,
            2 => {
                self.dist.bodies().all(ConvexBody::is_polytopal)
                    && self.bodies.iter().all(ConvexBody::is_polytopal)
            }
            _ => false,
        }
    }

    /// Maximizer (if any), atoms and extra bodies.
    pub(crate) fn reference_bodies(&self) -> Vec<ConvexBody> {
        let mut out: Vec<ConvexBody> = self.certified_maximizer().into_iter().collect();
        out.extend(self.dist.bodies().cloned());
        out.extend(self.bodies.iter().cloned());
        out
    }
}

fn matrix_rows(map: &AffineMap) -> Vec<Vec<f64>> {
    let m = map.matrix();
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Evidence for a failed property. Each variant carries enough to be
/// re-evaluated independently with [`Counterexample::recheck`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `D(M·K + L; M·Γ + L) ≠ D(K; Γ)`.
    Affine {
        scenario: String,
        dist: DiscreteSetDistribution,
        matrix: Vec<Vec<f64>>,
        translate: ConvexBody,
        body: ConvexBody,
        before: f64,
        after: f64,
    },
    /// A probe deeper than the center of symmetry.
    Maximality {
        scenario: String,
        dist: DiscreteSetDistribution,
        center: ConvexBody,
        probe: ConvexBody,
        center_depth: f64,
        probe_depth: f64,
    },
    /// `D((1−λ)K + λL) < D(L)` for a maximizer `K`.
    Monotonicity {
        scenario: String,
        dist: DiscreteSetDistribution,
        maximizer: ConvexBody,
        other: ConvexBody,
        lambda: f64,
        combined_depth: f64,
        other_depth: f64,
    },
    /// `d(K,S) = d(K,L) + d(L,S)` but `D(L) < D(S)`.
    Between {
        scenario: String,
        dist: DiscreteSetDistribution,
        maximizer: ConvexBody,
        middle: ConvexBody,
        far: ConvexBody,
        distances: [f64; 3],
        depths: [f64; 3],
    },
    /// Non-zero depth past the vanishing threshold.
    Vanishing {
        scenario: String,
        dist: DiscreteSetDistribution,
        body: ConvexBody,
        n: u64,
        depth: f64,
    },
    /// `D(K_n) > D(K)` in the tail of a sequence converging to `K`.
    Semicontinuity {
        scenario: String,
        dist: DiscreteSetDistribution,
        limit: ConvexBody,
        term: ConvexBody,
        n: usize,
        term_depth: f64,
        limit_depth: f64,
    },
    /// A sample whose depth deviates from the population depth by more
    /// than `epsilon` where the envelope makes that implausible.
    Consistency {
        scenario: String,
        dist: DiscreteSetDistribution,
        bodies: Vec<ConvexBody>,
        n: usize,
        seed: u64,
        epsilon: f64,
        sup_error: f64,
        dkw_bound: f64,
        violations: usize,
        replicates: usize,
    },
    /// A convex combination of two contour members outside the contour.
    Convexity {
        scenario: String,
        dist: DiscreteSetDistribution,
        alpha: f64,
        first: ConvexBody,
        second: ConvexBody,
        lambda: f64,
        depths: [f64; 3],
    },
}

impl Counterexample {
    /// Recomputes the violation from the stored payload.
    pub fn recheck(&self, f: &dyn DepthFunction) -> Result<bool> {
        let tol = f.tolerance();
        Ok(match self {
            Counterexample::Affine {
                dist,
                matrix,
                translate,
                body,
                ..
            } => {
                let map = AffineMap::from_rows(matrix, translate.clone())?;
                let before = f.evaluate(body, dist)?;
                let after = f.evaluate(&map.apply(body)?, &dist.map_affine(&map)?)?;
                !before.is_finite() || !after.is_finite() || (before - after).abs() > tol
            }
            Counterexample::Maximality {
                dist, center, probe, ..
            } => f.evaluate(probe, dist)? > f.evaluate(center, dist)? + tol,
            Counterexample::Monotonicity {
                dist,
                maximizer,
                other,
                lambda,
                ..
            } => {
                let comb = maximizer.convex_combination(other, *lambda)?;
                f.evaluate(&comb, dist)? < f.evaluate(other, dist)? - tol
            }
            Counterexample::Between {
                dist,
                maximizer,
                middle,
                far,
                ..
            } => {
                let h = |a: &ConvexBody, b: &ConvexBody| crate::geometry::hausdorff(a, b).map(|r| r.distance);
                let between = (h(maximizer, far)? - h(maximizer, middle)? - h(middle, far)?).abs()
                    <= center::BETWEEN_TOL;
                between && f.evaluate(middle, dist)? < f.evaluate(far, dist)? - tol
            }
            Counterexample::Vanishing { dist, body, .. } => f.evaluate(body, dist)? > tol,
            Counterexample::Semicontinuity {
                dist, limit, term, ..
            } => f.evaluate(term, dist)? > f.evaluate(limit, dist)? + tol,
            Counterexample::Consistency {
                dist,
                bodies,
                n,
                seed,
                epsilon,
                ..
            } => consistency::sup_error(f, dist, bodies, *n, *seed)? > *epsilon,
            Counterexample::Convexity {
                dist,
                alpha,
                first,
                second,
                lambda,
                ..
            } => {
                let members =
                    f.evaluate(first, dist)? >= alpha - tol && f.evaluate(second, dist)? >= alpha - tol;
                let comb = first.convex_combination(second, *lambda)?;
                members && f.evaluate(&comb, dist)? < alpha - tol
            }
        })
    }
}

/// Outcome of one property run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub verdict: Verdict,
    pub trials: usize,
    pub seed: u64,
    /// Horizons, envelopes and other context of the finite check.
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    pub(crate) fn pass(property: PropertyId, trials: usize, seed: u64, detail: impl Into<String>) -> Self {
        Self {
            property,
            verdict: Verdict::Pass,
            trials,
            seed,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub(crate) fn fail(
        property: PropertyId,
        trials: usize,
        seed: u64,
        detail: impl Into<String>,
        counterexample: Counterexample,
    ) -> Self {
        Self {
            property,
            verdict: Verdict::Fail,
            trials,
            seed,
            detail: detail.into(),
            counterexample: Some(counterexample),
        }
    }

    pub(crate) fn not_applicable(property: PropertyId, seed: u64, detail: impl Into<String>) -> Self {
        Self {
            property,
            verdict: Verdict::NotApplicable,
            trials: 0,
            seed,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Depth classes built from the axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    /// P1, P2, P3a, P4a.
    Algebraic,
    /// Algebraic plus P5, P6, P7.
    RestrictedAlgebraic,
    /// P1, P2, P3b, P4b.
    Geometric,
    /// Geometric plus P5, P6, P7.
    RestrictedGeometric,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Algebraic => "algebraic",
            Label::RestrictedAlgebraic => "restricted algebraic",
            Label::Geometric => "geometric",
            Label::RestrictedGeometric => "restricted geometric",
        })
    }
}

/// Every label whose defining properties all passed.
pub fn classify(reports: &[PropertyReport]) -> Vec<Label> {
    use PropertyId::*;
    let ok = |id: PropertyId| reports.iter().any(|r| r.property == id && r.passed());
    let all = |ids: &[PropertyId]| ids.iter().all(|&id| ok(id));
    let algebraic = all(&[P1, P2, P3a, P4a]);
    let geometric = all(&[P1, P2, P3b, P4b]);
    let regular = all(&[P5, P6, P7]);
    let mut labels = Vec::new();
    if algebraic {
        labels.push(Label::Algebraic);
        if regular {
            labels.push(Label::RestrictedAlgebraic);
        }
    }
    if geometric {
        labels.push(Label::Geometric);
        if regular {
            labels.push(Label::RestrictedGeometric);
        }
    }
    labels
}
