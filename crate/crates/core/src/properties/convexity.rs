//! P7: convexity of the depth contours `D_α`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::center::lambda_grid;
use super::random::{body_in, sub_seed, Region};
use super::{finite, Counterexample, DepthFunction, PropertyId, PropertyReport, Scenario};
use crate::error::Result;
use crate::geometry::ConvexBody;

/// Offset of the far translates placed in every pool.
const FAR: f64 = 150.0;

/// `Σ_j w_j·X_j`.
fn minkowski_mean(scenario: &Scenario) -> Result<ConvexBody> {
    let mut acc = ConvexBody::origin(scenario.dim());
    for atom in scenario.dist.atoms() {
        acc = acc.minkowski_sum(&atom.body.scale(atom.weight)?)?;
    }
    Ok(acc.normalized())
}

fn pool(rng: &mut ChaCha8Rng, scenario: &Scenario) -> Result<Vec<ConvexBody>> {
    let region = Region::of(&scenario.dist);
    let dim = scenario.dim();
    let mean = minkowski_mean(scenario)?;
    let mut out = scenario.reference_bodies();
    out.push(mean.clone());
    for i in 0..8 {
        let r = body_in(rng, &region);
        let mu = if i % 2 == 0 { 0.25 } else { 0.5 };
        out.push(mean.convex_combination(&r, mu)?);
        out.push(r);
    }
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            let mut t = vec![0.0; dim];
            t[i] = sign * FAR;
            out.push(mean.translate(&t)?);
        }
    }
    Ok(out)
}

/// Draws `trials` triples `(α, K, L)` with `K, L` in the contour `D_α`
/// (taken from a pool of central, random and far bodies) and `λ` from the
/// grid, and checks that the combination stays in `D_α`. Trials with an
/// empty contour are vacuous.
pub fn run_p7(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = PropertyId::P7;
    if scenarios.is_empty() || trials == 0 {
        return Ok(PropertyReport::not_applicable(id, seed, "no scenarios"));
    }
    let tol = f.tolerance();
    let lambdas = lambda_grid();
    let mut done = 0;
    let mut vacuous = 0;
    for (si, scenario) in scenarios.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[8, si as u64]));
        let bodies = pool(&mut rng, scenario)?;
        let depths: Vec<f64> = bodies
            .iter()
            .map(|b| f.evaluate(b, &scenario.dist).and_then(|v| finite(v, "P7")))
            .collect::<Result<_>>()?;
        for _ in 0..trials {
            let alpha = rng.random_range(1..=9) as f64 / 10.0;
            let members: Vec<usize> = (0..bodies.len()).filter(|&i| depths[i] >= alpha - tol).collect();
            let lambda = lambdas[rng.random_range(0..lambdas.len())];
            if members.is_empty() {
                vacuous += 1;
                continue;
            }
            let i = members[rng.random_range(0..members.len())];
            let j = members[rng.random_range(0..members.len())];
            let comb = bodies[i].convex_combination(&bodies[j], lambda)?;
            let v = finite(f.evaluate(&comb, &scenario.dist)?, "P7")?;
            done += 1;
            if v < alpha - tol {
                return Ok(PropertyReport::fail(
                    id,
                    done,
                    seed,
                    format!(
                        "scenario {}: combination at lambda {lambda} has depth {v} below alpha {alpha}",
                        scenario.id
                    ),
                    Counterexample::Convexity {
                        scenario: scenario.id.clone(),
                        dist: scenario.dist.clone(),
                        alpha,
                        first: bodies[i].clone(),
                        second: bodies[j].clone(),
                        lambda,
                        depths: [depths[i], depths[j], v],
                    },
                ));
            }
        }
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!("{done} contour combinations, {vacuous} vacuous draws"),
    ))
}
