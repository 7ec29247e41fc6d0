//! P4: vanishing at infinity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::random::{body_in, nonzero_body, sub_seed, Region};
use super::{finite, Counterexample, DepthFunction, PropertyId, PropertyReport, Scenario};
use crate::distribution::DiscreteSetDistribution;
use crate::error::Result;
use crate::geometry::{default_directions, hausdorff, ConvexBody, UnitDirection};

/// Margin by which a support value must leave the atom range.
const EXIT_MARGIN: f64 = 1e-6;
/// Tail length checked after the threshold.
const TAIL: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum P4Variant {
    /// `K + n·L` with `L ≠ {0}`.
    A,
    /// Translates `K + x_n` with `‖x_n‖ → ∞`.
    B,
}

/// First `n >= 1` at which `s_K(u) + n·s_L(u)` leaves the range of the
/// atom supports by more than a small margin, minimized over `dirs`. From
/// there on one tail probability is zero in direction `u`, so the Tukey
/// depth of `K + n·L` vanishes. `None` when no direction separates.
pub fn vanishing_threshold(
    body: &ConvexBody,
    step: &ConvexBody,
    dist: &DiscreteSetDistribution,
    dirs: &[UnitDirection],
) -> Result<Option<u64>> {
    let mut best: Option<u64> = None;
    for u in dirs {
        let sk = body.support(u)?;
        let sl = step.support(u)?;
        if sl.abs() <= EXIT_MARGIN {
            continue;
        }
        let law = dist.support_law(u)?;
        let (lo, hi) = law
            .values()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        // smallest n with sk + n·sl beyond the far end of the range
        let gap = if sl > 0.0 {
            hi + EXIT_MARGIN - sk
        } else {
            sk - lo + EXIT_MARGIN
        };
        let ratio = gap / sl.abs();
        let mut n = if ratio < 0.0 {
            1.0
        } else {
            (ratio.floor() + 1.0).max(1.0)
        };
        if n > 1e12 {
            continue;
        }
        // guard against rounding at the boundary
        while n > 1.0 && exits(sk + (n - 1.0) * sl, lo, hi) {
            n -= 1.0;
        }
        while !exits(sk + n * sl, lo, hi) {
            n += 1.0;
        }
        let n = n as u64;
        best = Some(best.map_or(n, |b| b.min(n)));
    }
    Ok(best)
}

fn exits(value: f64, lo: f64, hi: f64) -> bool {
    value > hi + EXIT_MARGIN || value < lo - EXIT_MARGIN
}

/// Doublings of the start index tried before declaring a failure.
const MAX_LAG: u32 = 10;

/// Looks for [`TAIL`]` + 1` consecutive zero-depth terms starting at
/// `n0·2^j`, `j = 0, …, MAX_LAG`. Returns the smallest such `j`, or the
/// last non-vanishing term seen.
fn tail_check(
    f: &dyn DepthFunction,
    scenario: &Scenario,
    n0: u64,
    term: impl Fn(u64) -> Result<ConvexBody>,
) -> Result<std::result::Result<u32, Counterexample>> {
    let mut last = None;
    'lag: for j in 0..=MAX_LAG {
        let start = n0.saturating_mul(1 << j);
        for n in start..=start + TAIL {
            let body = term(n)?;
            let depth = finite(f.evaluate(&body, &scenario.dist)?, "P4")?;
            if depth > f.tolerance() {
                last = Some(Counterexample::Vanishing {
                    scenario: scenario.id.clone(),
                    dist: scenario.dist.clone(),
                    body,
                    n,
                    depth,
                });
                continue 'lag;
            }
        }
        return Ok(Ok(j));
    }
    Ok(Err(last.expect("some term was evaluated")))
}

fn unit_step(dim: usize) -> ConvexBody {
    let mut e1 = vec![0.0; dim];
    e1[0] = 1.0;
    if dim == 1 {
        ConvexBody::point(e1).expect("finite point")
    } else {
        ConvexBody::polytope(vec![vec![0.0; dim], e1]).expect("finite segment")
    }
}

/// Direction of the `n`-th translate: alternating for `p = 1`, rotating by
/// the golden angle for `p = 2`, seeded Gaussian otherwise.
fn translate_direction(dim: usize, n: u64, seed: u64) -> Vec<f64> {
    match dim {
        1 => vec![if n.is_multiple_of(2) { 1.0 } else { -1.0 }],
        2 => {
            let theta = n as f64 * 2.399_963_229_728_653;
            vec![theta.cos(), theta.sin()]
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[n]));
            loop {
                let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
                if let Ok(u) = UnitDirection::new(v) {
                    break u.coords().to_vec();
                }
            }
        }
    }
}

/// P4 on `trials` bodies per scenario. Variant A starts at the exit
/// threshold `n0` of `K + n·L`; variant B moves `K` along translates and
/// starts at the first `n0` whose norm exceeds `max_j d_H(X_j, K)`. Both
/// require a run of zero depths from `n0` (lag 0, which the Tukey depth
/// always attains) or from a doubling of it.
pub fn run_p4(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    variant: P4Variant,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = match variant {
        P4Variant::A => PropertyId::P4a,
        P4Variant::B => PropertyId::P4b,
    };
    if scenarios.is_empty() || trials == 0 {
        return Ok(PropertyReport::not_applicable(id, seed, "no scenarios"));
    }
    let mut done = 0;
    let mut max_threshold = 0u64;
    let mut max_lag = 0u32;
    for (si, scenario) in scenarios.iter().enumerate() {
        let dim = scenario.dim();
        let stream = if variant == P4Variant::A { 4 } else { 5 };
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[stream, si as u64]));
        let region = Region::of(&scenario.dist);
        let refs = scenario.reference_bodies();
        let dirs = default_directions(dim);
        for t in 0..trials {
            let body = if t < refs.len() {
                refs[t].clone()
            } else {
                body_in(&mut rng, &region)
            };
            let found = match variant {
                P4Variant::A => {
                    let step = if t < refs.len() {
                        unit_step(dim)
                    } else {
                        nonzero_body(&mut rng, dim, 0.25 * region.span())
                    };
                    let Some(n0) = vanishing_threshold(&body, &step, &scenario.dist, &dirs)? else {
                        continue;
                    };
                    max_threshold = max_threshold.max(n0);
                    tail_check(f, scenario, n0, |n| body.minkowski_sum(&step.scale(n as f64)?))?
                }
                P4Variant::B => {
                    let mut reach = 0.0f64;
                    for atom in scenario.dist.bodies() {
                        let r = hausdorff(atom, &body)?;
                        let slack = if r.is_exact() {
                            0.0
                        } else {
                            1e-2 * (1.0 + r.distance)
                        };
                        reach = reach.max(r.distance + slack);
                    }
                    let radius = 0.25 * region.span();
                    let n0 = ((reach + EXIT_MARGIN) / radius).floor() as u64 + 1;
                    max_threshold = max_threshold.max(n0);
                    let dir_seed = sub_seed(seed, &[stream, si as u64, t as u64]);
                    tail_check(f, scenario, n0, |n| {
                        let x: Vec<f64> = translate_direction(dim, n, dir_seed)
                            .iter()
                            .map(|d| d * radius * n as f64)
                            .collect();
                        body.translate(&x)
                    })?
                }
            };
            done += 1;
            let cx = match found {
                Ok(lag) => {
                    max_lag = max_lag.max(lag);
                    continue;
                }
                Err(cx) => cx,
            };
            {
                return Ok(PropertyReport::fail(
                    id,
                    done,
                    seed,
                    format!(
                        "scenario {}, trial {t}: depth does not vanish in the tail",
                        scenario.id
                    ),
                    cx,
                ));
            }
        }
    }
    if done == 0 {
        return Ok(PropertyReport::not_applicable(
            id,
            seed,
            "no separating direction for any L",
        ));
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!(
            "{done} sequences, {} consecutive zeros from n0·2^j with thresholds n0 <= {max_threshold} and lag j <= {max_lag}",
            TAIL + 1
        ),
    ))
}
