//! P5: upper semicontinuity along converging sequences.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::random::{body_in, sub_seed, Region};
use super::{finite, Counterexample, DepthFunction, PropertyId, PropertyReport, Scenario};
use crate::distribution::DiscreteSetDistribution;
use crate::error::Result;
use crate::geometry::{ConvexBody, UnitDirection};

/// Number of terms of each sequence.
pub const HORIZON: usize = 64;
/// Ratio between consecutive perturbation sizes.
const RATE: f64 = 1.25;

/// Result of scanning `K_1, …, K_N` against the limit `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UscOutcome {
    pub limit_depth: f64,
    /// Smallest `N0` such that `D(K_n) <= D(K) + tol` for every
    /// `N0 <= n <= N`; `None` if the last term violates.
    pub n0: Option<usize>,
    /// 1-based index and depth of the last violating term.
    pub last_violation: Option<(usize, f64)>,
    pub horizon: usize,
}

impl UscOutcome {
    /// The finite criterion: the last quarter of the sequence stays below
    /// the limit.
    pub fn holds(&self) -> bool {
        self.n0
            .is_some_and(|n0| n0 <= self.horizon - self.horizon / 4 + 1)
    }
}

/// Scans a finite sequence `terms[n - 1] = K_n` converging to `limit`.
pub fn upper_semicontinuity_horizon(
    f: &dyn DepthFunction,
    dist: &DiscreteSetDistribution,
    limit: &ConvexBody,
    terms: &[ConvexBody],
) -> Result<UscOutcome> {
    let limit_depth = finite(f.evaluate(limit, dist)?, "P5")?;
    let mut last_violation = None;
    for (i, term) in terms.iter().enumerate() {
        let v = finite(f.evaluate(term, dist)?, "P5")?;
        if v > limit_depth + f.tolerance() {
            last_violation = Some((i + 1, v));
        }
    }
    let n0 = match last_violation {
        None => Some(1),
        Some((n, _)) if n < terms.len() => Some(n + 1),
        Some(_) => None,
    };
    Ok(UscOutcome {
        limit_depth,
        n0,
        last_violation,
        horizon: terms.len(),
    })
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Shrink,
    Plus,
    Minus,
    Random,
}

/// Perturbation size of the `k`-th term (1-based).
fn radius(scale: f64, k: usize) -> f64 {
    scale * RATE.powi(1 - k as i32)
}

fn sequence(rng: &mut ChaCha8Rng, limit: &ConvexBody, kind: Kind, scale: f64) -> Result<Vec<ConvexBody>> {
    let dim = limit.dim();
    let mut v = vec![0.0; dim];
    match kind {
        Kind::Shrink => {
            let unit = ConvexBody::boxed(vec![-1.0; dim], vec![1.0; dim])?;
            return (1..=HORIZON)
                .map(|k| limit.minkowski_sum(&unit.scale(radius(scale, k))?))
                .collect();
        }
        Kind::Plus => v[0] = 1.0,
        Kind::Minus => v[0] = -1.0,
        Kind::Random => {
            let raw: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
            v = UnitDirection::new(raw).map(|u| u.coords().to_vec()).unwrap_or(v);
            if v.iter().all(|c| *c == 0.0) {
                v[0] = 1.0;
            }
        }
    }
    (1..=HORIZON)
        .map(|k| {
            let t: Vec<f64> = v.iter().map(|c| c * radius(scale, k)).collect();
            limit.translate(&t)
        })
        .collect()
}

/// Sequences `K + r_k·B` with `B = [-1, 1]^p` and `K + r_k·v` for
/// `v = ±e1` and a random unit vector, where `r_k = c·1.25^{1-k}` over
/// [`HORIZON`] terms (down to about `10⁻⁶·c`). A sequence passes when its
/// last quarter is no deeper than its limit.
pub fn run_p5(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = PropertyId::P5;
    if scenarios.is_empty() || trials == 0 {
        return Ok(PropertyReport::not_applicable(id, seed, "no scenarios"));
    }
    let kinds = [Kind::Shrink, Kind::Plus, Kind::Minus, Kind::Random];
    let mut done = 0;
    let mut latest = 1;
    for (si, scenario) in scenarios.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[6, si as u64]));
        let region = Region::of(&scenario.dist);
        let refs = scenario.reference_bodies();
        for t in 0..trials {
            let limit = if t < 4 * refs.len() {
                refs[t / 4].clone()
            } else {
                body_in(&mut rng, &region)
            };
            let terms = sequence(&mut rng, &limit, kinds[t % 4], 0.25 * region.span())?;
            let outcome = upper_semicontinuity_horizon(f, &scenario.dist, &limit, &terms)?;
            done += 1;
            latest = latest.max(outcome.n0.unwrap_or(HORIZON + 1));
            if !outcome.holds() {
                let (n, term_depth) = outcome.last_violation.expect("violation recorded");
                return Ok(PropertyReport::fail(
                    id,
                    done,
                    seed,
                    format!(
                        "scenario {}, trial {t}: term {n} of {HORIZON} has depth {term_depth} above the limit depth {}",
                        scenario.id, outcome.limit_depth
                    ),
                    Counterexample::Semicontinuity {
                        scenario: scenario.id.clone(),
                        dist: scenario.dist.clone(),
                        limit,
                        term: terms[n - 1].clone(),
                        n,
                        term_depth,
                        limit_depth: outcome.limit_depth,
                    },
                ));
            }
        }
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!("{done} sequences of {HORIZON} terms, tails below the limit from N0 <= {latest}"),
    ))
}
