//! P6: consistency of the sample depth, with the DKW envelope.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, DiscreteCDF};

use super::random::{body_in, sub_seed, Region};
use super::{finite, Counterexample, DepthFunction, PropertyId, PropertyReport, Scenario};
use crate::distribution::DiscreteSetDistribution;
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

/// Significance below which an excess of envelope violations fails P6.
pub const P6_SIGNIFICANCE: f64 = 1e-3;

/// `4·exp(-2ε²n)`: bound on `P(sup_K |D - D_n| > ε)`.
pub fn dkw_bound(epsilon: f64, n: usize) -> f64 {
    4.0 * (-2.0 * epsilon * epsilon * n as f64).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub sup_error: f64,
    pub dkw_bound: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub epsilon: f64,
    /// Sorted by `n`.
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// Rows whose error exceeds `epsilon`.
    pub fn violations(&self) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter(move |r| r.sup_error > self.epsilon)
    }
}

/// `max_K |D(K; Γ) - D(K; Γ_n)|` for the empirical law of `n` draws.
pub fn sup_error(
    f: &dyn DepthFunction,
    dist: &DiscreteSetDistribution,
    bodies: &[ConvexBody],
    n: usize,
    seed: u64,
) -> Result<f64> {
    let population: Vec<f64> = bodies
        .iter()
        .map(|b| f.evaluate(b, dist).and_then(|v| finite(v, "P6")))
        .collect::<Result<_>>()?;
    sup_error_against(f, &population, bodies, &dist.sample(n, seed)?)
}

fn sup_error_against(
    f: &dyn DepthFunction,
    population: &[f64],
    bodies: &[ConvexBody],
    sample: &DiscreteSetDistribution,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (body, &pop) in bodies.iter().zip(population) {
        let v = finite(f.evaluate(body, sample)?, "P6")?;
        worst = worst.max((pop - v).abs());
    }
    Ok(worst)
}

/// One sample path: for each `n` of the grid (sorted, deduplicated) draws
/// `n` sets from `dist` with the same `seed` and records the sup error over
/// `bodies` next to the DKW bound.
pub fn consistency_experiment(
    f: &dyn DepthFunction,
    dist: &DiscreteSetDistribution,
    bodies: &[ConvexBody],
    n_grid: &[usize],
    epsilon: f64,
    seed: u64,
) -> Result<ConvergenceTable> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if bodies.is_empty() {
        return Err(Error::InvalidArgument("no test bodies".into()));
    }
    let mut grid = n_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() || grid[0] == 0 {
        return Err(Error::InvalidArgument("sample sizes must be positive".into()));
    }
    let population: Vec<f64> = bodies
        .iter()
        .map(|b| f.evaluate(b, dist).and_then(|v| finite(v, "P6")))
        .collect::<Result<_>>()?;
    let rows = grid
        .into_iter()
        .map(|n| {
            let sample = dist.sample(n, seed)?;
            Ok(ConvergenceRow {
                n,
                sup_error: sup_error_against(f, &population, bodies, &sample)?,
                dkw_bound: dkw_bound(epsilon, n),
                seed,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceTable { epsilon, rows })
}

/// `P(X >= k)` for `X ~ Bin(trials, p)`.
fn binomial_tail(trials: usize, p: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    match Binomial::new(p.max(0.0), trials as u64) {
        Ok(b) => b.sf(k as u64 - 1),
        Err(_) => 1.0,
    }
}

/// Runs `replicates` independent experiments per exact-engine scenario and
/// fails when, at some `n`, the count of runs with error above `epsilon` is
/// implausible under the envelope (binomial tail below
/// [`P6_SIGNIFICANCE`]).
pub fn run_p6(
    f: &dyn DepthFunction,
    scenarios: &[Scenario],
    n_grid: &[usize],
    epsilon: f64,
    replicates: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let id = PropertyId::P6;
    let eligible: Vec<(usize, &Scenario)> = scenarios
        .iter()
        .enumerate()
        .filter(|(_, s)| s.exact_engine())
        .collect();
    if eligible.is_empty() || replicates == 0 {
        return Ok(PropertyReport::not_applicable(
            id,
            seed,
            "no scenario with an exact engine",
        ));
    }
    let mut done = 0;
    let mut largest_n_error = 0.0f64;
    for (si, scenario) in &eligible {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[7, *si as u64]));
        let region = Region::of(&scenario.dist);
        let mut bodies = scenario.reference_bodies();
        bodies.extend((0..4).map(|_| body_in(&mut rng, &region)));
        let tables: Vec<ConvergenceTable> = (0..replicates)
            .map(|r| {
                consistency_experiment(
                    f,
                    &scenario.dist,
                    &bodies,
                    n_grid,
                    epsilon,
                    sub_seed(seed, &[7, *si as u64, r as u64]),
                )
            })
            .collect::<Result<_>>()?;
        done += replicates;
        for (col, row) in tables[0].rows.iter().enumerate() {
            let bad: Vec<&ConvergenceRow> = tables
                .iter()
                .map(|t| &t.rows[col])
                .filter(|r| r.sup_error > epsilon)
                .collect();
            let p_value = binomial_tail(replicates, row.dkw_bound.min(1.0), bad.len());
            if col + 1 == tables[0].rows.len() {
                largest_n_error = tables
                    .iter()
                    .map(|t| t.rows[col].sup_error)
                    .fold(largest_n_error, f64::max);
            }
            if p_value < P6_SIGNIFICANCE {
                let first = bad[0];
                return Ok(PropertyReport::fail(
                    id,
                    done,
                    seed,
                    format!(
                        "scenario {}, n = {}: {} of {replicates} runs exceed epsilon = {epsilon} (bound {:e}, tail {p_value:e})",
                        scenario.id,
                        row.n,
                        bad.len(),
                        row.dkw_bound
                    ),
                    Counterexample::Consistency {
                        scenario: scenario.id.clone(),
                        dist: scenario.dist.clone(),
                        bodies: bodies.clone(),
                        n: first.n,
                        seed: first.seed,
                        epsilon,
                        sup_error: first.sup_error,
                        dkw_bound: first.dkw_bound,
                        violations: bad.len(),
                        replicates,
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
            "{done} sample paths over n in {n_grid:?}, epsilon = {epsilon}; largest error at the top n {largest_n_error}"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::TukeyDepth;

    #[test]
    fn bound_values() {
        assert!((dkw_bound(0.05, 10_000) - 4.0 * (-50.0f64).exp()).abs() < 1e-30);
        assert_eq!(dkw_bound(0.05, 0), 4.0);
    }

    #[test]
    fn binomial_tail_edges() {
        assert_eq!(binomial_tail(10, 0.5, 0), 1.0);
        assert!((binomial_tail(10, 0.5, 10) - 0.5f64.powi(10)).abs() < 1e-12);
        assert_eq!(binomial_tail(10, 1.0, 10), 1.0);
    }

    #[test]
    fn point_mass_has_no_error() {
        let k = ConvexBody::interval(0.0, 1.0).unwrap();
        let d = DiscreteSetDistribution::degenerate(k.clone());
        let bodies = vec![k, ConvexBody::interval(-1.0, 3.0).unwrap()];
        let t = consistency_experiment(&TukeyDepth::default(), &d, &bodies, &[10, 100], 0.05, 1).unwrap();
        assert!(t.rows.iter().all(|r| r.sup_error == 0.0));
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let k = ConvexBody::interval(0.0, 1.0).unwrap();
        let d = DiscreteSetDistribution::degenerate(k.clone());
        let f = TukeyDepth::default();
        assert!(consistency_experiment(&f, &d, std::slice::from_ref(&k), &[10], 0.0, 1).is_err());
        assert!(consistency_experiment(&f, &d, std::slice::from_ref(&k), &[0], 0.05, 1).is_err());
        assert!(consistency_experiment(&f, &d, &[], &[10], 0.05, 1).is_err());
    }
}
