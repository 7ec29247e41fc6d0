//! The full property suite and its default scenarios.

use serde::{Deserialize, Serialize};

use super::{
    classify, run_p1, run_p2, run_p3a, run_p3b, run_p4, run_p5, run_p6, run_p7, DepthFunction, Label,
    P4Variant, PropertyReport, Scenario,
};
use crate::distribution::DiscreteSetDistribution;
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

fn default_seed() -> u64 {
    20_241
}
fn default_trials() -> usize {
    200
}
fn default_epsilon() -> f64 {
    0.05
}
fn default_n_grid() -> Vec<usize> {
    vec![100, 1_000, 10_000]
}
fn default_probes() -> usize {
    500
}
fn default_convexity_trials() -> usize {
    1_000
}
fn default_replicates() -> usize {
    40
}

/// Suite configuration; every field has a default, and a missing
/// `scenarios` list means [`SuiteConfig::default_scenarios`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Trials per scenario for P1, P3a, P4 and P5.
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "SuiteConfig::default_scenarios")]
    pub scenarios: Vec<Scenario>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_n_grid")]
    pub n_grid: Vec<usize>,
    /// Probe bodies per symmetric scenario for P2.
    #[serde(default = "default_probes")]
    pub probes: usize,
    /// Contour triples per scenario for P7.
    #[serde(default = "default_convexity_trials")]
    pub convexity_trials: usize,
    /// Independent sample paths per scenario for P6.
    #[serde(default = "default_replicates")]
    pub replicates: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            trials: default_trials(),
            scenarios: Self::default_scenarios(),
            epsilon: default_epsilon(),
            n_grid: default_n_grid(),
            probes: default_probes(),
            convexity_trials: default_convexity_trials(),
            replicates: default_replicates(),
        }
    }
}

fn iv(a: f64, b: f64) -> ConvexBody {
    ConvexBody::interval(a, b).expect("ordered endpoints")
}

fn sq(x: f64, y: f64) -> ConvexBody {
    ConvexBody::square(x, y, 1.0).expect("finite square")
}

impl SuiteConfig {
    /// The asymmetric two-interval law with the bodies of the P3b
    /// counterexample.
    pub fn two_atom_scenario() -> Scenario {
        let dist = DiscreteSetDistribution::from_counts(vec![iv(1.0, 2.0), iv(2.0, 7.0)], vec![3, 1])
            .expect("valid law");
        Scenario::new("two-atom", dist, vec![iv(3.0, 5.0)])
    }

    pub fn default_scenarios() -> Vec<Scenario> {
        let uniform =
            |bodies: Vec<ConvexBody>| DiscreteSetDistribution::equal_weight(bodies).expect("valid law");
        vec![
            Self::two_atom_scenario(),
            Scenario::new("sym1d", uniform(vec![iv(0.0, 2.0), iv(4.0, 6.0)]), vec![]),
            Scenario::new(
                "translates1d",
                uniform(vec![iv(0.0, 1.0), iv(1.0, 2.0), iv(2.0, 3.0)]),
                vec![],
            ),
            Scenario::new("delta", DiscreteSetDistribution::degenerate(iv(0.0, 1.0)), vec![]),
            Scenario::new("sym2d", uniform(vec![sq(0.0, 0.0), sq(10.0, 0.0)]), vec![]),
            Scenario::new(
                "squares2d",
                uniform(vec![sq(0.0, 0.0), sq(1.0, 0.0), sq(2.0, 0.0)]),
                vec![sq(1.0, 0.0)],
            ),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub reports: Vec<PropertyReport>,
    pub labels: Vec<Label>,
}

/// Runs P1–P7 in order and classifies the outcome.
pub fn run_suite(f: &dyn DepthFunction, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.scenarios.is_empty() {
        return Err(Error::InvalidArgument("empty scenario list".into()));
    }
    let dim_ok = cfg
        .scenarios
        .iter()
        .all(|s| s.bodies.iter().all(|b| b.dim() == s.dim()));
    if !dim_ok {
        return Err(Error::InvalidArgument(
            "scenario body dimension differs from its law".into(),
        ));
    }
    let (s, seed) = (&cfg.scenarios, cfg.seed);
    let reports = vec![
        run_p1(f, s, cfg.trials, seed)?,
        run_p2(f, s, cfg.probes, seed)?,
        run_p3a(f, s, cfg.trials, seed)?,
        run_p3b(f, s, seed)?,
        run_p4(f, s, P4Variant::A, cfg.trials, seed)?,
        run_p4(f, s, P4Variant::B, cfg.trials, seed)?,
        run_p5(f, s, cfg.trials, seed)?,
        run_p6(f, s, &cfg.n_grid, cfg.epsilon, cfg.replicates, seed)?,
        run_p7(f, s, cfg.convexity_trials, seed)?,
    ];
    let labels = classify(&reports);
    Ok(SuiteReport {
        name: f.name().to_string(),
        seed,
        reports,
        labels,
    })
}
