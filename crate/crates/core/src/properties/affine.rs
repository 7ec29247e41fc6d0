//! P1: affine invariance.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{affine_map, body_in, sub_seed, Region};
use super::{matrix_rows, Counterexample, DepthFunction, PropertyId, PropertyReport, Scenario};
use crate::depth::depth_sampled;
use crate::distribution::DiscreteSetDistribution;
use crate::error::Result;
use crate::geometry::{sphere_map, AffineMap, ConvexBody, UnitDirection};

/// Compares `D(K; Γ)` with `D(M·K + L; M·Γ + L)` for `trials` draws per
/// scenario. Trial 0 uses the identity and trial 1 the reflection `-I`,
/// both with `L = {0}`; later trials draw `M` with condition number at most
/// `10³`. Only scenarios covered by an exact engine take part.
pub fn run_p1(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = PropertyId::P1;
    let eligible: Vec<(usize, &Scenario)> = scenarios
        .iter()
        .enumerate()
        .filter(|(_, s)| s.exact_engine())
        .collect();
    if eligible.is_empty() || trials == 0 {
        return Ok(PropertyReport::not_applicable(
            id,
            seed,
            "no scenario with an exact engine",
        ));
    }
    let tol = f.tolerance();
    let mut done = 0;
    let mut worst = 0.0f64;
    for (si, scenario) in &eligible {
        let dim = scenario.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[1, *si as u64]));
        let region = Region::of(&scenario.dist);
        let refs = scenario.reference_bodies();
        for t in 0..trials {
            let map = match t {
                0 => AffineMap::linear(DMatrix::identity(dim, dim))?,
                1 => AffineMap::linear(-DMatrix::<f64>::identity(dim, dim))?,
                _ => affine_map(&mut rng, dim, region.span()),
            };
            let body = if t % 2 == 0 && !refs.is_empty() {
                refs[(t / 2) % refs.len()].clone()
            } else {
                body_in(&mut rng, &region)
            };
            let before = f.evaluate(&body, &scenario.dist)?;
            let image = scenario.dist.map_affine(&map)?;
            let after = f.evaluate(&map.apply(&body)?, &image)?;
            done += 1;
            let gap = (before - after).abs();
            if gap.is_finite() {
                worst = worst.max(gap);
            }
            if !(before.is_finite() && after.is_finite()) || gap > tol {
                return Ok(PropertyReport::fail(
                    id,
                    done,
                    seed,
                    format!(
                        "scenario {}, trial {t}: depth {before} became {after}",
                        scenario.id
                    ),
                    Counterexample::Affine {
                        scenario: scenario.id.clone(),
                        dist: scenario.dist.clone(),
                        matrix: matrix_rows(&map),
                        translate: map.translate().clone(),
                        body,
                        before,
                        after,
                    },
                ));
            }
        }
    }
    Ok(PropertyReport::pass(
        id,
        done,
        seed,
        format!(
            "{done} affine images over {} scenarios, max gap {worst:e}",
            eligible.len()
        ),
    ))
}

/// Sampled depths of `K` on `dirs` and of `M·K + L` (w.r.t. `M·Γ + L`) on
/// the image directions `v = M⁻ᵀu/‖M⁻ᵀu‖`. Since `s_{MK+L}(v)` is
/// `‖Mᵀv‖·s_K(u) + s_L(v)` for every body alike, every comparison carries
/// over and the two values agree up to [`crate::COMPARISON_TOL`] ties.
pub fn sampled_affine_pair(
    body: &ConvexBody,
    dist: &DiscreteSetDistribution,
    map: &AffineMap,
    dirs: &[UnitDirection],
) -> Result<(f64, f64)> {
    let inverse = map
        .matrix()
        .clone()
        .try_inverse()
        .ok_or(crate::error::Error::SingularMatrix)?;
    let image_dirs = dirs
        .iter()
        .map(|u| sphere_map(&inverse, u))
        .collect::<Result<Vec<_>>>()?;
    let before = depth_sampled(body, dist, dirs)?.value;
    let after = depth_sampled(&map.apply(body)?, &dist.map_affine(map)?, &image_dirs)?.value;
    Ok((before, after))
}
