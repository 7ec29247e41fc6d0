//! Frozen hand-derived values and randomized cross-checks of the depth
//! engines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setdepth::distribution::is_compact_symmetric;
use setdepth::properties::random::{body_around, body_in, Region};
use setdepth::properties::vanishing_threshold;
use setdepth::{
    contour_membership, depth, depth_interval_exact, depth_poly2d_exact, depth_sampled, direction_set,
    hausdorff, tukey_median_1d, ConvexBody, DepthConfig, DepthMethod, DirectionStrategy,
    DiscreteSetDistribution, Side, UnitDirection,
};

fn iv(a: f64, b: f64) -> ConvexBody {
    ConvexBody::interval(a, b).unwrap()
}

fn two_atom() -> DiscreteSetDistribution {
    DiscreteSetDistribution::from_counts(vec![iv(1.0, 2.0), iv(2.0, 7.0)], vec![3, 1]).unwrap()
}

fn d(body: &ConvexBody, dist: &DiscreteSetDistribution) -> f64 {
    depth(body, dist, &DepthConfig::default()).unwrap().value
}

// ---- frozen oracles -------------------------------------------------------

#[test]
fn frozen_two_atom_depths() {
    let g = two_atom();
    assert_eq!(d(&iv(1.0, 2.0), &g), 0.75);
    assert_eq!(d(&iv(2.0, 7.0), &g), 0.25);
    assert_eq!(d(&iv(3.0, 5.0), &g), 0.0);
    // both sides 1/4: u = +1 gives P(b >= 2.5), u = -1 gives P(a >= 1.5)
    assert_eq!(d(&iv(1.5, 2.5), &g), 0.25);
    // contains both atoms: P(b >= 8) = 0
    assert_eq!(d(&iv(0.0, 8.0), &g), 0.0);
    let r = depth(&iv(3.0, 5.0), &g, &DepthConfig::default()).unwrap();
    assert_eq!(r.witness_direction, UnitDirection::negative_1d());
    assert_eq!(r.witness_side, Side::Le);
    assert_eq!(r.method, DepthMethod::Exact1d);
}

#[test]
fn frozen_two_atom_distances_and_median() {
    let h = |a: &ConvexBody, b: &ConvexBody| hausdorff(a, b).unwrap().distance;
    assert_eq!(h(&iv(1.0, 2.0), &iv(2.0, 7.0)), 5.0);
    assert_eq!(h(&iv(1.0, 2.0), &iv(3.0, 5.0)), 3.0);
    assert_eq!(h(&iv(3.0, 5.0), &iv(2.0, 7.0)), 2.0);
    assert_eq!(tukey_median_1d(&two_atom()).unwrap(), iv(1.0, 2.0));
    let translates =
        DiscreteSetDistribution::equal_weight(vec![iv(0.0, 1.0), iv(1.0, 2.0), iv(2.0, 3.0)]).unwrap();
    assert_eq!(tukey_median_1d(&translates).unwrap(), iv(1.0, 2.0));
    assert_eq!(d(&iv(1.0, 2.0), &translates), 2.0 / 3.0);
}

#[test]
fn frozen_planar_values() {
    let sq = |x: f64| ConvexBody::square(x, 0.0, 1.0).unwrap();
    let three = DiscreteSetDistribution::equal_weight(vec![sq(0.0), sq(1.0), sq(2.0)]).unwrap();
    assert_eq!(depth_poly2d_exact(&sq(1.0), &three).unwrap().value, 2.0 / 3.0);
    assert_eq!(depth_poly2d_exact(&sq(0.0), &three).unwrap().value, 1.0 / 3.0);
    let pair = DiscreteSetDistribution::equal_weight(vec![sq(0.0), sq(10.0)]).unwrap();
    assert_eq!(depth_poly2d_exact(&sq(5.0), &pair).unwrap().value, 0.5);
    // a segment spanning both squares' x-range: the vertical direction sees
    // supports 0 vs 1 and catches nothing from below
    let seg = ConvexBody::polytope(vec![vec![0.5, 0.5], vec![10.5, 0.5]]).unwrap();
    assert_eq!(depth_poly2d_exact(&seg, &pair).unwrap().value, 0.0);
}

#[test]
fn frozen_vanishing_threshold() {
    let dirs = [UnitDirection::positive_1d(), UnitDirection::negative_1d()];
    let n = vanishing_threshold(&iv(1.0, 2.0), &iv(1.0, 1.0), &two_atom(), &dirs).unwrap();
    assert_eq!(n, Some(2));
    for n in 2..=20 {
        assert_eq!(d(&iv(1.0 + n as f64, 2.0 + n as f64), &two_atom()), 0.0);
    }
    // in particular from n = 7 onward
    assert_eq!(d(&iv(8.0, 9.0), &two_atom()), 0.0);
}

// ---- randomized cross-checks ----------------------------------------------

fn random_law_1d(rng: &mut ChaCha8Rng) -> DiscreteSetDistribution {
    let k = rng.random_range(1..=7);
    let bodies = (0..k)
        .map(|_| {
            let a = rng.random_range(-5..=5) as f64;
            iv(a, a + rng.random_range(0..=4) as f64)
        })
        .collect();
    let counts = (0..k).map(|_| rng.random_range(1..=4)).collect();
    DiscreteSetDistribution::from_counts(bodies, counts).unwrap()
}

fn random_law_2d(rng: &mut ChaCha8Rng) -> DiscreteSetDistribution {
    let k = rng.random_range(2..=6);
    let bodies = (0..k)
        .map(|_| {
            let c = [rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)];
            body_around(rng, &c, 2.0)
        })
        .collect();
    DiscreteSetDistribution::equal_weight(bodies).unwrap()
}

/// Depth of an interval by direct endpoint counting.
fn endpoint_depth(body: &ConvexBody, dist: &DiscreteSetDistribution) -> f64 {
    let (a, b) = (-body.support_vec(&[-1.0]), body.support_vec(&[1.0]));
    let counts = dist.counts().unwrap();
    let n: u64 = counts.iter().sum();
    let mut tally = [0u64; 4];
    for (atom, &c) in dist.atoms().iter().zip(counts) {
        let (x, y) = (-atom.body.support_vec(&[-1.0]), atom.body.support_vec(&[1.0]));
        tally[0] += c * u64::from(y <= b);
        tally[1] += c * u64::from(y >= b);
        tally[2] += c * u64::from(x >= a);
        tally[3] += c * u64::from(x <= a);
    }
    tally.iter().map(|&t| t as f64 / n as f64).fold(1.0, f64::min)
}

#[test]
fn halfspace_formulation_matches_endpoint_counting() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let g = random_law_1d(&mut rng);
        let a = rng.random_range(-6..=6) as f64;
        let k = iv(a, a + rng.random_range(0..=5) as f64);
        assert_eq!(
            depth_interval_exact(&k, &g).unwrap().value,
            endpoint_depth(&k, &g)
        );
    }
}

#[test]
fn sampled_depth_bounds_the_exact_depth() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..100 {
        let g = random_law_2d(&mut rng);
        let k = body_in(&mut rng, &Region::of(&g));
        let exact = depth_poly2d_exact(&k, &g).unwrap().value;
        let grid = direction_set(2, DirectionStrategy::Grid2d, 256, 0).unwrap();
        let random = direction_set(2, DirectionStrategy::Random, 64, i).unwrap();
        for dirs in [grid, random] {
            assert!(depth_sampled(&k, &g, &dirs).unwrap().value >= exact);
        }
    }
}

#[test]
fn sampled_depth_shrinks_as_directions_grow() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let g = random_law_2d(&mut rng);
        let k = body_in(&mut rng, &Region::of(&g));
        let dirs = direction_set(2, DirectionStrategy::Random, 512, 5).unwrap();
        let mut last = 1.0;
        for m in [8, 32, 128, 512] {
            let v = depth_sampled(&k, &g, &dirs[..m]).unwrap().value;
            assert!(v <= last);
            last = v;
        }
    }
}

#[test]
fn monotone_from_the_median_500_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let g = random_law_1d(&mut rng);
        let k = tukey_median_1d(&g).unwrap();
        let l = body_in(&mut rng, &Region::of(&g));
        let dl = d(&l, &g);
        for i in 0..=10 {
            let comb = k.convex_combination(&l, i as f64 / 10.0).unwrap();
            assert!(d(&comb, &g) >= dl, "{k:?} {l:?} {i}");
        }
    }
}

#[test]
fn median_is_a_maximizer() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let g = random_law_1d(&mut rng);
        let dk = d(&tukey_median_1d(&g).unwrap(), &g);
        let region = Region::of(&g);
        for _ in 0..50 {
            assert!(d(&body_in(&mut rng, &region), &g) <= dk);
        }
    }
}

#[test]
fn symmetric_center_is_deepest() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let up = [UnitDirection::positive_1d(), UnitDirection::negative_1d()];
    for _ in 0..100 {
        let (c1, c2) = (rng.random_range(-2.0..2.0), 0.0);
        let c2 = c1 + rng.random_range(0.5..2.0) + c2;
        let center = iv(c1, c2);
        let mut bodies = Vec::new();
        for _ in 0..rng.random_range(1..=3) {
            let a = rng.random_range(c1 - 4.0..c1 + 4.0);
            let b = a + rng.random_range(0.0..(c2 - c1));
            bodies.push(iv(a, b));
            // reflection through the center in support coordinates
            bodies.push(iv(2.0 * c1 - a, 2.0 * c2 - b));
        }
        let g = DiscreteSetDistribution::equal_weight(bodies).unwrap();
        assert!(is_compact_symmetric(&g, &center, &up, 1e-9).unwrap());
        let dc = d(&center, &g);
        let region = Region::of(&g);
        for _ in 0..50 {
            assert!(d(&body_in(&mut rng, &region), &g) <= dc);
        }
    }
}

#[test]
fn contours_are_convex_1000_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cfg = DepthConfig::default();
    let mut checked = 0;
    let mut law = 0;
    while checked < 1000 {
        law += 1;
        let g = if law % 2 == 0 {
            random_law_1d(&mut rng)
        } else {
            random_law_2d(&mut rng)
        };
        let region = Region::of(&g);
        let atoms: Vec<ConvexBody> = g.bodies().cloned().collect();
        let mut pool = atoms.clone();
        for _ in 0..6 {
            let a = &atoms[rng.random_range(0..atoms.len())];
            let b = &atoms[rng.random_range(0..atoms.len())];
            pool.push(
                a.convex_combination(b, rng.random_range(0.0..1.0))
                    .unwrap()
                    .normalized(),
            );
            pool.push(body_in(&mut rng, &region));
        }
        let depths: Vec<f64> = pool.iter().map(|b| d(b, &g)).collect();
        for _ in 0..20 {
            let (i, j) = (rng.random_range(0..pool.len()), rng.random_range(0..pool.len()));
            let top = (depths[i].min(depths[j]) * 10.0 + 1e-9).floor() as i32;
            if top < 1 {
                continue;
            }
            let alpha = rng.random_range(1..=top.min(9)) as f64 / 10.0;
            assert!(contour_membership(&pool[i], &g, alpha, &cfg).unwrap());
            assert!(contour_membership(&pool[j], &g, alpha, &cfg).unwrap());
            let lambda = rng.random_range(0..=10) as f64 / 10.0;
            let comb = pool[i].convex_combination(&pool[j], lambda).unwrap();
            assert!(
                contour_membership(&comb, &g, alpha, &cfg).unwrap(),
                "{:?} {:?} {lambda} {alpha}",
                pool[i],
                pool[j]
            );
            checked += 1;
        }
    }
}
