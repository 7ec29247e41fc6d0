//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so that the lines always appear in the output.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setdepth::geometry::transpose_norm;
use setdepth::properties::random::{affine_map, body_around, body_in, nonsingular_matrix, Region};
use setdepth::properties::{consistency_experiment, dkw_bound, run_p3b, run_p7, Counterexample};
use setdepth::{
    depth, depth_poly2d_exact, depth_sampled, direction_set, hausdorff, run_suite, sphere_map, AffineMap,
    ConvexBody, DepthConfig, DirectionStrategy, DiscreteSetDistribution, Label, PropertyId, SuiteConfig,
    TukeyDepth, UnitDirection, Verdict, COMPARISON_TOL,
};

/// Criterion 1: rational values compared with `==`.
const EXACT_TOL: f64 = 0.0;
const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_BUDGET: Duration = Duration::from_secs(60);
const C2_MIN_TRIALS: usize = 200;
const C3_BUDGET: Duration = Duration::from_secs(5);
const C3_EPSILON: f64 = 0.05;
const C3_N: usize = 10_000;
const C3_SEED: u64 = 2024;
const C4_BUDGET: Duration = Duration::from_secs(120);
const C4_SCENARIOS: usize = 100;
const C4_ANGLES: usize = 100_000;
const C4_TOL: f64 = 1e-12;
const C5_CASES: usize = 200;
const C6_CASES: usize = 500;
const C6_TOL: f64 = 1e-9;
const C7_TRIPLES: usize = 1_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn iv(a: f64, b: f64) -> ConvexBody {
    ConvexBody::interval(a, b).unwrap()
}

fn d(body: &ConvexBody, dist: &DiscreteSetDistribution) -> f64 {
    depth(body, dist, &DepthConfig::default()).unwrap().value
}

fn two_atom() -> DiscreteSetDistribution {
    SuiteConfig::two_atom_scenario().dist
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = two_atom();
    let (k, l, s) = (iv(1.0, 2.0), iv(3.0, 5.0), iv(2.0, 7.0));
    let depths = [d(&k, &g), d(&s, &g), d(&l, &g)];
    let h = |a: &ConvexBody, b: &ConvexBody| hausdorff(a, b).unwrap();
    let (ks, kl, ls) = (h(&k, &s), h(&k, &l), h(&l, &s));
    let report = run_p3b(&TukeyDepth::default(), &[SuiteConfig::two_atom_scenario()], 0).unwrap();
    let triple_ok = matches!(
        &report.counterexample,
        Some(Counterexample::Between { maximizer, middle, far, depths, .. })
            if *maximizer == k && *middle == l && *far == s && *depths == [0.75, 0.0, 0.25]
    );
    let elapsed = start.elapsed();
    let values_ok = (depths[0] - 0.75).abs() <= EXACT_TOL
        && (depths[1] - 0.25).abs() <= EXACT_TOL
        && (depths[2] - 0.0).abs() <= EXACT_TOL;
    let dist_ok = ks.is_exact()
        && kl.is_exact()
        && ls.is_exact()
        && ks.distance == 5.0
        && kl.distance == 3.0
        && ls.distance == 2.0
        && ks.distance == kl.distance + ls.distance;
    Outcome {
        pass: values_ok && dist_ok && report.verdict == Verdict::Fail && triple_ok && elapsed < C1_BUDGET,
        detail: format!(
            "D = {:?} for [1,2],[2,7],[3,5]; d_H = {} = {} + {}; P3b {} with ([1,2],[3,5],[2,7]) = {triple_ok}; {:.3}s",
            depths,
            ks.distance,
            kl.distance,
            ls.distance,
            report.verdict,
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let report = run_suite(&TukeyDepth::default(), &SuiteConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let mut ok = true;
    let mut parts = Vec::new();
    for r in &report.reports {
        let expected = if r.property == PropertyId::P3b {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        // P3b stops at its first violating triple; P6 counts sample paths
        let needs_trials = !matches!(r.property, PropertyId::P3b);
        ok &= r.verdict == expected && (!needs_trials || r.trials >= C2_MIN_TRIALS);
        parts.push(format!("{}={}({})", r.property, r.verdict, r.trials));
    }
    let labels_ok = report.labels.contains(&Label::RestrictedAlgebraic)
        && report.labels.contains(&Label::Algebraic)
        && !report.labels.contains(&Label::Geometric)
        && !report.labels.contains(&Label::RestrictedGeometric);
    let names: Vec<String> = report.labels.iter().map(ToString::to_string).collect();
    Outcome {
        pass: ok && labels_ok && elapsed < C2_BUDGET,
        detail: format!(
            "{}; labels [{}]; seed {}; {:.2}s",
            parts.join(" "),
            names.join(", "),
            report.seed,
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let bodies = [iv(1.0, 2.0), iv(2.0, 7.0), iv(3.0, 5.0)];
    let table = consistency_experiment(
        &TukeyDepth::default(),
        &two_atom(),
        &bodies,
        &[C3_N],
        C3_EPSILON,
        C3_SEED,
    )
    .unwrap();
    let elapsed = start.elapsed();
    let row = &table.rows[0];
    Outcome {
        pass: row.sup_error <= C3_EPSILON && (row.dkw_bound - dkw_bound(C3_EPSILON, C3_N)).abs() == 0.0 && elapsed < C3_BUDGET,
        detail: format!(
            "n = {}, seed {}: sup error {:.5} <= {C3_EPSILON}; envelope 4exp(-2*{C3_EPSILON}^2*{}) = {:.3e}; {:.3}s",
            row.n,
            row.seed,
            row.sup_error,
            row.n,
            row.dkw_bound,
            elapsed.as_secs_f64()
        ),
    }
}

fn random_planar_law(rng: &mut ChaCha8Rng) -> DiscreteSetDistribution {
    let k = rng.random_range(2..=6);
    let bodies = (0..k)
        .map(|_| {
            let c = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
            body_around(rng, &c, 2.0)
        })
        .collect();
    let counts = (0..k).map(|_| rng.random_range(1..=3)).collect();
    DiscreteSetDistribution::from_counts(bodies, counts).unwrap()
}

/// Direct scan of the depth definition over equispaced angles.
fn brute_force(body: &ConvexBody, dist: &DiscreteSetDistribution, angles: usize) -> f64 {
    let bodies: Vec<&ConvexBody> = dist.bodies().collect();
    let counts = dist.counts().unwrap();
    let n: u64 = counts.iter().sum();
    let mut best = u64::MAX;
    for i in 0..angles {
        let theta = TAU * i as f64 / angles as f64;
        let u = [theta.cos(), theta.sin()];
        let x = body.support_vec(&u);
        let (mut le, mut ge) = (0u64, 0u64);
        for (b, &c) in bodies.iter().zip(counts) {
            let s = b.support_vec(&u);
            if s <= x + COMPARISON_TOL {
                le += c;
            }
            if s >= x - COMPARISON_TOL {
                ge += c;
            }
        }
        best = best.min(le.min(ge));
    }
    best as f64 / n as f64
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut bound_ok = true;
    let mut mismatches = Vec::new();
    for i in 0..C4_SCENARIOS {
        let g = random_planar_law(&mut rng);
        let k = body_in(&mut rng, &Region::of(&g));
        let exact = depth_poly2d_exact(&k, &g).unwrap().value;
        let brute = brute_force(&k, &g, C4_ANGLES);
        let gap = (exact - brute).abs();
        if gap > C4_TOL {
            mismatches.push(i);
        }
        worst = worst.max(gap);
        for dirs in [
            direction_set(2, DirectionStrategy::Grid2d, 1024, 0).unwrap(),
            direction_set(2, DirectionStrategy::Random, 256, i as u64).unwrap(),
        ] {
            bound_ok &= exact <= depth_sampled(&k, &g, &dirs).unwrap().value;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: mismatches.is_empty() && bound_ok && elapsed < C4_BUDGET,
        detail: format!(
            "{C4_SCENARIOS} scenarios vs {C4_ANGLES}-angle scan: max gap {worst:e} (mismatches {mismatches:?}); exact <= sampled: {bound_ok}; {:.2}s",
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    let mut reflections = 0;
    for i in 0..C5_CASES {
        let dim = 1 + i % 2;
        let g = if dim == 1 {
            let k = rng.random_range(1..=6);
            let bodies = (0..k)
                .map(|_| {
                    let a = rng.random_range(-5.0..5.0);
                    iv(a, a + rng.random_range(0.0..4.0))
                })
                .collect();
            DiscreteSetDistribution::from_counts(bodies, (0..k).map(|_| rng.random_range(1..=4)).collect())
                .unwrap()
        } else {
            random_planar_law(&mut rng)
        };
        let region = Region::of(&g);
        let k = body_in(&mut rng, &region);
        let map = affine_map(&mut rng, dim, region.span());
        if map.matrix().determinant() < 0.0 {
            reflections += 1;
        }
        let before = d(&k, &g);
        let after = d(&map.apply(&k).unwrap(), &g.map_affine(&map).unwrap());
        // both values are count / total for the same total
        let n: u64 = g.counts().unwrap().iter().sum();
        worst = worst.max(((before - after) * n as f64).abs());
    }
    Outcome {
        pass: worst == 0.0,
        detail: format!(
            "{C5_CASES} cases in p = 1, 2 ({reflections} orientation-reversing): max count discrepancy {worst}"
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for i in 0..C6_CASES {
        let dim = 1 + i % 4;
        let m = nonsingular_matrix(&mut rng, dim, 1e3);
        let center: Vec<f64> = (0..dim).map(|_| rng.random_range(-5.0..5.0)).collect();
        let raw: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let Ok(u) = UnitDirection::new(raw) else { continue };
        let (lhs, k) = if i % 5 == 4 {
            // ball: s_{MB}(u) = <Mc, u> + r·‖Mᵀu‖ in closed form
            let r = rng.random_range(0.0..3.0);
            let mc = &m * nalgebra::DVector::from_vec(center.clone());
            let lhs = mc.iter().zip(u.coords()).map(|(a, b)| a * b).sum::<f64>()
                + r * (m.transpose() * nalgebra::DVector::from_column_slice(u.coords())).norm();
            (lhs, ConvexBody::ball(center, r).unwrap())
        } else {
            let k = body_around(&mut rng, &center, 2.0);
            let image = AffineMap::linear(m.clone()).unwrap().linear_image(&k).unwrap();
            (image.support(&u).unwrap(), k)
        };
        let rhs = transpose_norm(&m, &u) * k.support(&sphere_map(&m, &u).unwrap()).unwrap();
        worst = worst.max((lhs - rhs).abs());
    }
    Outcome {
        pass: worst <= C6_TOL,
        detail: format!(
            "{C6_CASES} (M, K, u) in p = 1..4: max |s_MK(u) - |M^T u| s_K(v)| = {worst:e} <= {C6_TOL:e}"
        ),
    }
}

fn criterion_7() -> Outcome {
    let cfg = SuiteConfig::default();
    let report = run_p7(&TukeyDepth::default(), &cfg.scenarios, C7_TRIPLES, cfg.seed).unwrap();
    Outcome {
        pass: report.verdict == Verdict::Pass && report.trials >= C7_TRIPLES,
        detail: format!("{}: {} ({})", report.property, report.verdict, report.detail),
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let runs: [Criterion; 7] = [
        ("exact counterexample", criterion_1),
        ("axiom suite on the Tukey depth", criterion_2),
        ("consistency at n = 10^4", criterion_3),
        ("exact planar depth vs brute force", criterion_4),
        ("exact affine invariance", criterion_5),
        ("linear image support identity", criterion_6),
        ("convexity of contours", criterion_7),
    ];
    let mut all = true;
    let mut passed = Vec::new();
    for (i, (name, run)) in runs.iter().enumerate() {
        let o = run();
        all &= o.pass;
        passed.push(o.pass);
        println!(
            "criterion {} [{}] {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let limits = passed[1] && passed[2];
    all &= limits;
    println!(
        "criterion 8 [{}] limit statements: covered by the finite-horizon checks of criteria 2 (P4 tails, P5 horizon, P6 envelope) and 3",
        if limits { "PASS" } else { "FAIL" }
    );
    if !all {
        std::process::exit(1);
    }
}
