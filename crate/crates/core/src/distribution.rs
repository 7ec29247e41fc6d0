//! Finitely supported laws of compact convex random sets.
//!
//! Masses are either arbitrary positive weights or integer counts over a
//! common total (empirical laws). Count-backed laws evaluate every
//! probability as a single division `k / n`, so tail probabilities are the
//! correctly rounded rationals.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineMap, ConvexBody, UnitDirection};
use crate::COMPARISON_TOL;

/// Tolerance on the raw weight sum accepted by [`make_discrete`].
pub const WEIGHT_SUM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub body: ConvexBody,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistRepr", into = "DistRepr")]
pub struct DiscreteSetDistribution {
    dim: usize,
    atoms: Vec<Atom>,
    counts: Option<Vec<u64>>,
}

/// Validated distribution from bodies and weights; weights are
/// renormalized to sum to one.
pub fn make_discrete(bodies: Vec<ConvexBody>, weights: Vec<f64>) -> Result<DiscreteSetDistribution> {
    DiscreteSetDistribution::new(bodies, weights)
}

fn check_bodies(bodies: &[ConvexBody]) -> Result<usize> {
    let first = bodies
        .first()
        .ok_or_else(|| Error::InvalidDistribution("no atoms".into()))?;
    let dim = first.dim();
    for b in bodies {
        if b.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
    }
    Ok(dim)
}

impl DiscreteSetDistribution {
    pub fn new(bodies: Vec<ConvexBody>, weights: Vec<f64>) -> Result<Self> {
        let dim = check_bodies(&bodies)?;
        if bodies.len() != weights.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} atoms but {} weights",
                bodies.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidDistribution(format!("non-positive weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let atoms = bodies
            .into_iter()
            .zip(weights)
            .map(|(body, w)| Atom {
                body,
                weight: if total == 1.0 { w } else { w / total },
            })
            .collect();
        Ok(Self {
            dim,
            atoms,
            counts: None,
        })
    }

    /// Empirical law with integer multiplicities.
    pub fn from_counts(bodies: Vec<ConvexBody>, counts: Vec<u64>) -> Result<Self> {
        let dim = check_bodies(&bodies)?;
        if bodies.len() != counts.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} atoms but {} counts",
                bodies.len(),
                counts.len()
            )));
        }
        if counts.contains(&0) {
            return Err(Error::InvalidDistribution("zero count".into()));
        }
        let total: u64 = counts.iter().sum();
        let atoms = bodies
            .into_iter()
            .zip(&counts)
            .map(|(body, &c)| Atom {
                body,
                weight: c as f64 / total as f64,
            })
            .collect();
        Ok(Self {
            dim,
            atoms,
            counts: Some(counts),
        })
    }

    /// Each body with mass `1/n`, the law of an i.i.d. sample.
    pub fn equal_weight(bodies: Vec<ConvexBody>) -> Result<Self> {
        let n = bodies.len();
        Self::from_counts(bodies, vec![1; n])
    }

    /// Point mass `δ_K`.
    pub fn degenerate(body: ConvexBody) -> Self {
        Self::from_counts(vec![body], vec![1]).expect("single atom is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn bodies(&self) -> impl Iterator<Item = &ConvexBody> {
        self.atoms.iter().map(|a| &a.body)
    }

    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }

    /// `n` i.i.d. draws, returned as their empirical law. Atoms that were
    /// never drawn are dropped; the remaining ones keep their order.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("sample size must be at least 1".into()));
        }
        let index = WeightedIndex::new(self.atoms.iter().map(|a| a.weight))
            .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; self.atoms.len()];
        for _ in 0..n {
            counts[index.sample(&mut rng)] += 1;
        }
        let (bodies, counts): (Vec<_>, Vec<_>) = self
            .atoms
            .iter()
            .zip(counts)
            .filter(|(_, c)| *c > 0)
            .map(|(a, c)| (a.body.clone(), c))
            .unzip();
        Self::from_counts(bodies, counts)
    }

    /// Law of the real random variable `s_Γ(u)`.
    pub fn support_law(&self, u: &UnitDirection) -> Result<DirectionalLaw> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        let values = self
            .atoms
            .iter()
            .map(|a| a.body.support_vec(u.coords()))
            .collect();
        Ok(DirectionalLaw {
            direction: u.clone(),
            values,
            weights: self.atoms.iter().map(|a| a.weight).collect(),
            counts: self.counts.clone(),
        })
    }

    /// Pushforward `M·Γ + L`, atom for atom.
    pub fn map_affine(&self, map: &AffineMap) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                Ok(Atom {
                    body: map.apply(&a.body)?,
                    weight: a.weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: self.dim,
            atoms,
            counts: self.counts.clone(),
        })
    }
}

fn mass(weights: &[f64], counts: Option<&[u64]>, keep: impl Fn(usize) -> bool) -> f64 {
    match counts {
        Some(counts) => {
            let total: u64 = counts.iter().sum();
            let hit: u64 = (0..counts.len()).filter(|&i| keep(i)).map(|i| counts[i]).sum();
            hit as f64 / total as f64
        }
        None => (0..weights.len()).filter(|&i| keep(i)).map(|i| weights[i]).sum(),
    }
}

/// The law of `s_Γ(u)` for a fixed direction: one support value per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalLaw {
    direction: UnitDirection,
    values: Vec<f64>,
    weights: Vec<f64>,
    counts: Option<Vec<u64>>,
}

impl DirectionalLaw {
    pub(crate) fn from_parts(
        direction: UnitDirection,
        values: Vec<f64>,
        weights: Vec<f64>,
        counts: Option<Vec<u64>>,
    ) -> Self {
        Self {
            direction,
            values,
            weights,
            counts,
        }
    }

    pub fn direction(&self) -> &UnitDirection {
        &self.direction
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `P(s_Γ(u) ≤ x)`; values within [`COMPARISON_TOL`] of `x` count as ties.
    pub fn cdf_le(&self, x: f64) -> f64 {
        mass(&self.weights, self.counts.as_deref(), |i| {
            self.values[i] <= x + COMPARISON_TOL
        })
    }

    /// `P(s_Γ(u) ≥ x)`, ties included.
    pub fn cdf_ge(&self, x: f64) -> f64 {
        mass(&self.weights, self.counts.as_deref(), |i| {
            self.values[i] >= x - COMPARISON_TOL
        })
    }

    /// Smallest value whose cumulative mass reaches one half.
    pub fn lower_median(&self) -> f64 {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&i, &j| self.values[i].total_cmp(&self.values[j]));
        match &self.counts {
            Some(counts) => {
                let total: u64 = counts.iter().sum();
                let mut acc = 0u64;
                for &i in &order {
                    acc += counts[i];
                    if 2 * acc >= total {
                        return self.values[i];
                    }
                }
            }
            None => {
                let mut acc = 0.0;
                for &i in &order {
                    acc += self.weights[i];
                    if acc >= 0.5 - 1e-12 {
                        return self.values[i];
                    }
                }
            }
        }
        self.values[order[order.len() - 1]]
    }
}

/// Minkowski midpoint `½·K1 + ½·K2`: the uniform law on `{K1, K2}` is
/// compact-symmetric with respect to it.
pub fn two_atom_symmetric_center(k1: &ConvexBody, k2: &ConvexBody) -> Result<ConvexBody> {
    k1.scale(0.5)?.minkowski_sum(&k2.scale(0.5)?)
}

/// Checks, on each supplied direction, that `s_Γ(u) − s_K(u)` and
/// `s_K(u) − s_Γ(u)` have the same law. Values are matched within `tol`;
/// aggregated masses must agree exactly for count-backed laws and within
/// `1e-12` otherwise. This certifies symmetry on the tested directions
/// only, which is the whole sphere when `p = 1`.
pub fn is_compact_symmetric(
    dist: &DiscreteSetDistribution,
    center: &ConvexBody,
    directions: &[UnitDirection],
    tol: f64,
) -> Result<bool> {
    if directions.is_empty() {
        return Err(Error::InvalidArgument("empty direction set".into()));
    }
    if center.dim() != dist.dim() {
        return Err(Error::DimensionMismatch {
            expected: dist.dim(),
            found: center.dim(),
        });
    }
    for u in directions {
        let law = dist.support_law(u)?;
        let s = center.support(u)?;
        if !law_is_symmetric_about(&law, s, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug)]
struct Group {
    value: f64,
    count: u64,
    weight: f64,
}

fn law_is_symmetric_about(law: &DirectionalLaw, center: f64, tol: f64) -> bool {
    let mut items: Vec<(f64, usize)> = law
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| (v - center, i))
        .collect();
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut groups: Vec<Group> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (d, i) in items {
        let count = law.counts.as_ref().map_or(0, |c| c[i]);
        match groups.last_mut() {
            Some(g) if d - last <= tol => {
                g.count += count;
                g.weight += law.weights[i];
            }
            _ => groups.push(Group {
                value: d,
                count,
                weight: law.weights[i],
            }),
        }
        last = d;
    }
    let n = groups.len();
    (0..n).all(|i| {
        let (g, h) = (&groups[i], &groups[n - 1 - i]);
        let mirrored = (g.value + h.value).abs() <= 2.0 * tol;
        let same_mass = if law.counts.is_some() {
            g.count == h.count
        } else {
            (g.weight - h.weight).abs() <= 1e-12
        };
        mirrored && same_mass
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRepr {
    body: ConvexBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
}

/// `{"dimension": p, "atoms": [{"body": <body>, "prob": w}, ...]}`; an
/// empirical law may give integer `count`s instead of (or next to) `prob`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistRepr {
    dimension: usize,
    atoms: Vec<AtomRepr>,
}

impl TryFrom<DistRepr> for DiscreteSetDistribution {
    type Error = Error;

    fn try_from(repr: DistRepr) -> Result<Self> {
        let all_counts = !repr.atoms.is_empty() && repr.atoms.iter().all(|a| a.count.is_some());
        if !all_counts && repr.atoms.iter().any(|a| a.prob.is_none()) {
            return Err(Error::InvalidDistribution(
                "every atom needs a prob unless every atom has a count".into(),
            ));
        }
        let probs: Vec<Option<f64>> = repr.atoms.iter().map(|a| a.prob).collect();
        let dist = if all_counts {
            let (bodies, counts): (Vec<_>, Vec<_>) = repr
                .atoms
                .into_iter()
                .map(|a| (a.body, a.count.unwrap_or(0)))
                .unzip();
            let dist = Self::from_counts(bodies, counts)?;
            for (atom, prob) in dist.atoms.iter().zip(probs) {
                if prob.is_some_and(|p| (p - atom.weight).abs() > WEIGHT_SUM_TOL) {
                    return Err(Error::InvalidDistribution(format!(
                        "prob {prob:?} disagrees with count share {}",
                        atom.weight
                    )));
                }
            }
            dist
        } else {
            let (bodies, weights): (Vec<_>, Vec<_>) = repr
                .atoms
                .into_iter()
                .map(|a| (a.body, a.prob.unwrap_or(0.0)))
                .unzip();
            Self::new(bodies, weights)?
        };
        if dist.dim != repr.dimension {
            return Err(Error::DimensionMismatch {
                expected: repr.dimension,
                found: dist.dim,
            });
        }
        Ok(dist)
    }
}

impl From<DiscreteSetDistribution> for DistRepr {
    fn from(d: DiscreteSetDistribution) -> Self {
        let counts = d.counts.map(|c| c.into_iter().map(Some).collect::<Vec<_>>());
        let counts = counts.unwrap_or_else(|| vec![None; d.atoms.len()]);
        DistRepr {
            dimension: d.dim,
            atoms: d
                .atoms
                .into_iter()
                .zip(counts)
                .map(|(a, count)| AtomRepr {
                    body: a.body,
                    prob: Some(a.weight),
                    count,
                })
                .collect(),
        }
    }
}
