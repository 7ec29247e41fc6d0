//! P2 (maximality at the center), P3a and P3b (monotonicity).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random::{body_around, body_in, sub_seed, Region};
use super::{finite, Counterexample, DepthFunction, PropertyId, PropertyReport, Scenario};
use crate::distribution::DiscreteSetDistribution;
use crate::error::Result;
use crate::geometry::{hausdorff, ConvexBody};

/// Slack on `d(K,S) - d(K,L) - d(L,S)` for a triple to count as
/// metric-between.
pub(crate) const BETWEEN_TOL: f64 = 1e-9;

/// The λ grid `{0, 0.1, …, 1}`.
pub(crate) fn lambda_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

/// Probes for P2: the scenario's own bodies, the center grown by boxes,
/// small perturbations of the center and random bodies over the enlarged
/// region of the law.
fn probes(rng: &mut ChaCha8Rng, scenario: &Scenario, center: &ConvexBody, count: usize) -> Vec<ConvexBody> {
    let region = Region::of(&scenario.dist);
    let dim = scenario.dim();
    let mut out = scenario.reference_bodies();
    for r in [0.1, 0.5, 1.0, 2.0] {
        let half = r * region.span();
        if let Ok(grown) =
            ConvexBody::boxed(vec![-half; dim], vec![half; dim]).and_then(|b| center.minkowski_sum(&b))
        {
            out.push(grown);
        }
    }
    let mut i = 0usize;
    while out.len() < count {
        let body = if i.is_multiple_of(3) {
            let scale = 0.05 * region.span();
            let t: Vec<f64> = (0..dim).map(|_| rng.random_range(-scale..=scale)).collect();
            let bump = body_around(rng, &vec![0.0; dim], scale);
            center.translate(&t).and_then(|c| c.minkowski_sum(&bump))
        } else {
            Ok(body_in(rng, &region))
        };
        out.push(body.unwrap_or_else(|_| body_in(rng, &region)));
        i += 1;
    }
    out.truncate(count.max(1));
    out
}

/// Checks that the certified center of every compact-symmetric scenario is
/// at least as deep as `probes` probe bodies.
pub fn run_p2(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    probe_count: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = PropertyId::P2;
    let tol = f.tolerance();
    let mut done = 0;
    let mut used = Vec::new();
    for (si, scenario) in scenarios.iter().enumerate() {
        let Some(center) = scenario.certified_center() else {
            continue;
        };
        used.push(scenario.id.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[2, si as u64]));
        let center_depth = finite(f.evaluate(&center, &scenario.dist)?, "P2")?;
        for probe in probes(&mut rng, scenario, &center, probe_count) {
            let probe_depth = finite(f.evaluate(&probe, &scenario.dist)?, "P2")?;
            done += 1;
            if probe_depth > center_depth + tol {
                return Ok(PropertyReport::fail(
                    id,
                    done,
                    seed,
                    format!(
                        "scenario {}: probe depth {probe_depth} exceeds center depth {center_depth}",
                        scenario.id
                    ),
                    Counterexample::Maximality {
                        scenario: scenario.id.clone(),
                        dist: scenario.dist.clone(),
                        center,
                        probe,
                        center_depth,
                        probe_depth,
                    },
                ));
            }
        }
    }
    if used.is_empty() {
        return Ok(PropertyReport::not_applicable(
            id,
            seed,
            "no compact-symmetric scenario",
        ));
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!("{done} probes against certified centers of [{}]", used.join(", ")),
    ))
}

/// The deepest body (under `f`) of a pool that starts with the certified
/// maximizer; ties go to the earliest entry.
fn deepest(
    f: &dyn DepthFunction,
    dist: &DiscreteSetDistribution,
    pool: &[ConvexBody],
) -> Result<(usize, f64)> {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, body) in pool.iter().enumerate() {
        let v = finite(f.evaluate(body, dist)?, "maximizer search")?;
        if v > best.1 {
            best = (i, v);
        }
    }
    Ok(best)
}

/// Checks `D((1-λ)K + λL) >= D(L)` along the λ grid, where `K` is the
/// deepest body among the certified maximizer, the scenario bodies and the
/// drawn `L`s. Scenarios without a certified maximizer are skipped.
pub fn run_p3a(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = PropertyId::P3a;
    let tol = f.tolerance();
    let lambdas = lambda_grid();
    let mut done = 0;
    let mut used = Vec::new();
    for (si, scenario) in scenarios.iter().enumerate() {
        if scenario.certified_maximizer().is_none() {
            continue;
        }
        used.push(scenario.id.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[3, si as u64]));
        let region = Region::of(&scenario.dist);
        let mut pool = scenario.reference_bodies();
        pool.extend((0..trials).map(|_| body_in(&mut rng, &region)));
        let (k_index, _) = deepest(f, &scenario.dist, &pool)?;
        let maximizer = pool[k_index].clone();
        for (t, other) in pool.iter().enumerate() {
            if t == k_index {
                continue;
            }
            let other_depth = finite(f.evaluate(other, &scenario.dist)?, "P3a")?;
            for &lambda in &lambdas {
                let comb = maximizer.convex_combination(other, lambda)?;
                let combined_depth = finite(f.evaluate(&comb, &scenario.dist)?, "P3a")?;
                done += 1;
                if combined_depth < other_depth - tol {
                    return Ok(PropertyReport::fail(
                        id,
                        done,
                        seed,
                        format!(
                            "scenario {}: depth {combined_depth} at lambda {lambda} below endpoint depth {other_depth}",
                            scenario.id
                        ),
                        Counterexample::Monotonicity {
                            scenario: scenario.id.clone(),
                            dist: scenario.dist.clone(),
                            maximizer,
                            other: other.clone(),
                            lambda,
                            combined_depth,
                            other_depth,
                        },
                    ));
                }
            }
        }
    }
    if used.is_empty() {
        return Ok(PropertyReport::not_applicable(
            id,
            seed,
            "no scenario with a certified maximizer",
        ));
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!("{done} (L, lambda) checks on [{}]", used.join(", ")),
    ))
}

fn exact_distance(a: &ConvexBody, b: &ConvexBody) -> Result<Option<f64>> {
    let r = hausdorff(a, b)?;
    Ok(r.is_exact().then_some(r.distance))
}

/// Searches the scenario bodies (maximizer, atoms, extra bodies, and
/// combinations of the maximizer with each of them) for
/// triples `(K, L, S)` with `d(K,S) = d(K,L) + d(L,S)` under an exact
/// Hausdorff distance, and checks `D(L) >= D(S)`. A scenario without such
/// triples passes vacuously.
pub fn run_p3b(f: &dyn DepthFunction, scenarios: &[Scenario], seed: u64) -> Result<PropertyReport> {
    let id = PropertyId::P3b;
    let tol = f.tolerance();
    let mut done = 0;
    let mut used = Vec::new();
    for scenario in scenarios {
        if scenario.certified_maximizer().is_none() {
            continue;
        }
        used.push(scenario.id.clone());
        let dist = &scenario.dist;
        let mut candidates: Vec<ConvexBody> = Vec::new();
        let refs = scenario.reference_bodies();
        let mut extra = Vec::new();
        if let Some(first) = refs.first() {
            for other in &refs[1..] {
                for lambda in [0.25, 0.5, 0.75] {
                    extra.push(first.convex_combination(other, lambda)?.normalized());
                }
            }
        }
        for body in refs.into_iter().chain(extra) {
            if !candidates.contains(&body) {
                candidates.push(body);
            }
        }
        let (k_index, k_depth) = deepest(f, dist, &candidates)?;
        let maximizer = candidates[k_index].clone();
        let depths: Vec<f64> = candidates
            .iter()
            .map(|b| f.evaluate(b, dist).and_then(|v| finite(v, "P3b")))
            .collect::<Result<_>>()?;
        for (li, middle) in candidates.iter().enumerate() {
            if li == k_index {
                continue;
            }
            let Some(d_kl) = exact_distance(&maximizer, middle)? else {
                continue;
            };
            for (si, far) in candidates.iter().enumerate() {
                if si == k_index || si == li {
                    continue;
                }
                let (Some(d_ls), Some(d_ks)) =
                    (exact_distance(middle, far)?, exact_distance(&maximizer, far)?)
                else {
                    continue;
                };
                if d_kl <= BETWEEN_TOL || d_ls <= BETWEEN_TOL || (d_ks - d_kl - d_ls).abs() > BETWEEN_TOL {
                    continue;
                }
                done += 1;
                if depths[li] < depths[si] - tol {
                    return Ok(PropertyReport::fail(
                        id,
                        done,
                        seed,
                        format!(
                            "scenario {}: d(K,S) = {d_ks} = {d_kl} + {d_ls} but D(L) = {} < D(S) = {}",
                            scenario.id, depths[li], depths[si]
                        ),
                        Counterexample::Between {
                            scenario: scenario.id.clone(),
                            dist: dist.clone(),
                            maximizer,
                            middle: middle.clone(),
                            far: far.clone(),
                            distances: [d_kl, d_ls, d_ks],
                            depths: [k_depth, depths[li], depths[si]],
                        },
                    ));
                }
            }
        }
    }
    if used.is_empty() {
        return Ok(PropertyReport::not_applicable(
            id,
            seed,
            "no scenario with a certified maximizer",
        ));
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!("{done} metric-between triples on [{}]", used.join(", ")),
    ))
}
