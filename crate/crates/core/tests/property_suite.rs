//! The property harness on the Tukey depth and on the mutants.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use setdepth::properties::mutants::Mutant;
use setdepth::properties::random::affine_map;
use setdepth::properties::{
    consistency_experiment, run_p3b, run_p4, sampled_affine_pair, Counterexample, P4Variant,
};
use setdepth::{
    direction_set, run_suite, ConvexBody, DepthFunction, DirectionStrategy, DiscreteSetDistribution, Label,
    PropertyId, Scenario, SuiteConfig, SuiteReport, TukeyDepth, Verdict,
};

use Label::*;
use PropertyId::*;

fn failing(report: &SuiteReport) -> BTreeSet<PropertyId> {
    report
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .map(|r| r.property)
        .collect()
}

fn assert_self_certifying(f: &dyn DepthFunction, report: &SuiteReport) {
    for r in &report.reports {
        match (&r.verdict, &r.counterexample) {
            (Verdict::Fail, Some(cx)) => assert!(cx.recheck(f).unwrap(), "{} {}", report.name, r.property),
            (Verdict::Fail, None) => panic!("fail without payload"),
            (_, cx) => assert!(cx.is_none()),
        }
    }
}

#[test]
fn tukey_suite_matches_the_expected_verdicts() {
    let f = TukeyDepth::default();
    let report = run_suite(&f, &SuiteConfig::default()).unwrap();
    assert_eq!(failing(&report), BTreeSet::from([P3b]));
    assert!(report.reports.iter().all(|r| r.verdict != Verdict::NotApplicable));
    assert_eq!(report.labels, vec![Algebraic, RestrictedAlgebraic]);
    assert_self_certifying(&f, &report);
    // the P4 tails start exactly at the exit threshold
    for id in [P4a, P4b] {
        let r = report.reports.iter().find(|r| r.property == id).unwrap();
        assert!(r.detail.contains("lag j <= 0"), "{}", r.detail);
    }
    let json = serde_json::to_string(&report).unwrap();
    let back: SuiteReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn mutant_truth_table() {
    let cfg = SuiteConfig::default();
    // (mutant, properties that must fail, exact fail set when derivable, labels)
    type Row = (
        Mutant,
        &'static [PropertyId],
        Option<&'static [PropertyId]>,
        &'static [Label],
    );
    let table: [Row; 5] = [
        (Mutant::ConstantOne, &[P4a, P4b], Some(&[P4a, P4b]), &[]),
        (Mutant::IgnoreReflection, &[P1], None, &[]),
        (Mutant::ContainmentBonus, &[P2, P4a], None, &[]),
        (
            Mutant::StrictInequalities,
            &[P5],
            Some(&[P5]),
            &[Algebraic, Geometric],
        ),
        (Mutant::OutlierBump, &[P3b, P7], Some(&[P3b, P7]), &[Algebraic]),
    ];
    for (mutant, must, exact, labels) in table {
        let report = run_suite(&mutant, &cfg).unwrap();
        let fails = failing(&report);
        for id in must {
            assert!(
                fails.contains(id),
                "{} should fail {id}: {fails:?}",
                mutant.name()
            );
        }
        if let Some(exact) = exact {
            assert_eq!(fails, exact.iter().copied().collect(), "{}", mutant.name());
        }
        assert_eq!(report.labels, labels, "{}", mutant.name());
        assert_self_certifying(&mutant, &report);
    }
}

#[test]
fn reflection_mutant_fails_on_the_reflection_trial() {
    let report = run_suite(&Mutant::IgnoreReflection, &SuiteConfig::default()).unwrap();
    let p1 = &report.reports[0];
    let Some(Counterexample::Affine {
        matrix, translate, ..
    }) = &p1.counterexample
    else {
        panic!("expected an affine counterexample");
    };
    assert_eq!(matrix, &vec![vec![-1.0]]);
    assert!(translate.is_origin(0.0));
}

#[test]
fn p3b_counterexample_on_the_two_atom_scenario() {
    let report = run_p3b(&TukeyDepth::default(), &[SuiteConfig::two_atom_scenario()], 0).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    let Some(Counterexample::Between {
        maximizer,
        middle,
        far,
        distances,
        depths,
        ..
    }) = report.counterexample
    else {
        panic!("expected a between-triple");
    };
    let iv = |a, b| ConvexBody::interval(a, b).unwrap();
    assert_eq!(
        (maximizer, middle, far),
        (iv(1.0, 2.0), iv(3.0, 5.0), iv(2.0, 7.0))
    );
    assert_eq!(distances, [3.0, 2.0, 5.0]);
    assert_eq!(depths, [0.75, 0.0, 0.25]);
}

#[test]
fn p3b_passes_on_collinear_translates_and_point_masses() {
    let cfg = SuiteConfig::default();
    for id in ["translates1d", "delta"] {
        let s: Vec<Scenario> = cfg.scenarios.iter().filter(|s| s.id == id).cloned().collect();
        let r = run_p3b(&TukeyDepth::default(), &s, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{id}");
    }
}

#[test]
fn p4_on_a_zero_step_is_not_applicable() {
    // a point mass at the origin: every K + n·{0} stays put; the runner
    // still draws non-zero steps, so use the threshold helper directly
    let g = DiscreteSetDistribution::degenerate(ConvexBody::interval(0.0, 1.0).unwrap());
    let dirs = direction_set(1, DirectionStrategy::Axes, 2, 0).unwrap();
    let none = setdepth::properties::vanishing_threshold(
        &ConvexBody::interval(0.0, 1.0).unwrap(),
        &ConvexBody::origin(1),
        &g,
        &dirs,
    )
    .unwrap();
    assert_eq!(none, None);
    let empty: Vec<Scenario> = Vec::new();
    let r = run_p4(&TukeyDepth::default(), &empty, P4Variant::A, 10, 0).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable);
}

#[test]
fn consistency_on_a_point_mass_is_exact() {
    let k = ConvexBody::square(0.0, 0.0, 1.0).unwrap();
    let g = DiscreteSetDistribution::degenerate(k.clone());
    let table =
        consistency_experiment(&TukeyDepth::default(), &g, &[k], &[100, 1_000, 10_000], 0.05, 9).unwrap();
    assert_eq!(table.rows.len(), 3);
    assert!(table.rows.iter().all(|r| r.sup_error == 0.0 && r.seed == 9));
    assert!(table.rows.windows(2).all(|w| w[0].n < w[1].n));
}

#[test]
fn sampled_engine_is_affine_invariant_on_image_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let boxes: Vec<ConvexBody> = (0..5)
        .map(|i| {
            let c = i as f64;
            ConvexBody::boxed(vec![c, -c, 0.5 * c], vec![c + 1.0, 2.0 - c, c + 2.0]).unwrap()
        })
        .collect();
    let g = DiscreteSetDistribution::equal_weight(boxes).unwrap();
    let dirs = direction_set(3, DirectionStrategy::Lowdisc, 512, 0).unwrap();
    for i in 0..20 {
        let map = affine_map(&mut rng, 3, 4.0);
        let k = ConvexBody::boxed(vec![0.0, -1.0, 0.0], vec![1.0 + i as f64 / 10.0, 1.0, 2.0]).unwrap();
        let (before, after) = sampled_affine_pair(&k, &g, &map, &dirs).unwrap();
        assert_eq!(before, after);
    }
    let identity = setdepth::AffineMap::linear(DMatrix::identity(3, 3)).unwrap();
    let k = ConvexBody::ball(vec![1.0, 0.0, 1.0], 1.0).unwrap();
    let (a, b) = sampled_affine_pair(&k, &g, &identity, &dirs).unwrap();
    assert_eq!(a, b);
}

#[test]
fn suite_config_defaults_and_validation() {
    let cfg: SuiteConfig = serde_json::from_str(r#"{"seed": 5, "trials": 10}"#).unwrap();
    assert_eq!(cfg.seed, 5);
    assert_eq!(cfg.scenarios.len(), SuiteConfig::default_scenarios().len());
    assert_eq!(cfg.n_grid, vec![100, 1_000, 10_000]);
    let empty: SuiteConfig = serde_json::from_str(r#"{"scenarios": []}"#).unwrap();
    assert!(run_suite(&TukeyDepth::default(), &empty).is_err());
    assert!(serde_json::from_str::<SuiteConfig>(r#"{"trails": 3}"#).is_err());
}

#[test]
fn suites_are_deterministic() {
    let cfg = SuiteConfig {
        trials: 30,
        convexity_trials: 100,
        probes: 50,
        replicates: 3,
        ..SuiteConfig::default()
    };
    let a = run_suite(&TukeyDepth::default(), &cfg).unwrap();
    let b = run_suite(&TukeyDepth::default(), &cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
