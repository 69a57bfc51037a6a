use proptest::prelude::*;

use gcorr::body::random_body;
use gcorr::chernoff::{chernoff_bound, markov_bound, optimal_t};
use gcorr::gaussian::{measure_ball_exact, measure_mc, wilson_interval, Budget};
use gcorr::inequality::{check_shao, h_profile, Verdict};
use gcorr::linalg::{self, Matrix};
use gcorr::matrix_lab::{build_from_angles, check_hypotheses, det_block_identity, shao_block_inverse, AnglePair};
use gcorr::minkowski::{minkowski_member, MinkowskiVerdict, DEFAULT_MAX_ITER, DEFAULT_TOL};
use gcorr::{ShapeKind, SymmetricConvexBody};

fn kind() -> impl Strategy<Value = ShapeKind> {
    prop_oneof![
        Just(ShapeKind::Ball),
        Just(ShapeKind::Box),
        Just(ShapeKind::Ellipsoid),
        Just(ShapeKind::Polytope),
    ]
}

fn contraction(rows: usize, cols: usize, seed: u64, norm: f64) -> Matrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = Matrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0));
    let s = linalg::spectral_norm(&m);
    if s == 0.0 {
        m
    } else {
        m * (norm / s)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_is_symmetric(k in kind(), n in 1usize..6, seed in any::<u64>(), x in prop::collection::vec(-2.0f64..2.0, 6)) {
        let body = random_body(k, n, 1.0, seed).unwrap();
        let x = &x[..n];
        let minus: Vec<f64> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(body.contains(x).unwrap(), body.contains(&minus).unwrap());
    }

    #[test]
    fn projection_lands_inside_and_is_idempotent(k in kind(), n in 1usize..5, seed in any::<u64>(), x in prop::collection::vec(-3.0f64..3.0, 5)) {
        let body = random_body(k, n, 1.0, seed).unwrap();
        let p = body.project(&x[..n]).unwrap();
        let grown = SymmetricConvexBody::scaled(1.0 + 1e-7, body.clone()).unwrap();
        prop_assert!(grown.contains(&p).unwrap());
        let q = body.project(&p).unwrap();
        prop_assert!(p.iter().zip(&q).all(|(a, b)| (a - b).abs() < 1e-8));
    }

    #[test]
    fn minkowski_sum_contains_each_summand(ka in kind(), kb in kind(), n in 1usize..4, seed in any::<u64>(), x in prop::collection::vec(-1.0f64..1.0, 3)) {
        let a = random_body(ka, n, 1.0, seed).unwrap();
        let b = random_body(kb, n, 1.0, seed ^ 1).unwrap();
        let pa = a.project(&x[..n]).unwrap();
        let reversed: Vec<f64> = x[..n].iter().rev().copied().collect();
        let pb = b.project(&reversed).unwrap();
        let sum: Vec<f64> = pa.iter().zip(&pb).map(|(u, v)| 0.999 * (u + v)).collect();
        let v = minkowski_member(&a, &b, &sum, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        prop_assert_ne!(v, MinkowskiVerdict::NonMember);
        let minus: Vec<f64> = sum.iter().map(|t| -t).collect();
        prop_assert_eq!(v, minkowski_member(&a, &b, &minus, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap());
    }

    #[test]
    fn wilson_interval_contains_estimate(hits in 0usize..=1000, z in 0.5f64..4.0) {
        let p = hits as f64 / 1000.0;
        let (lo, hi) = wilson_interval(p, 1000, z);
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }

    #[test]
    fn mc_estimates_are_reproducible(seed in any::<u64>(), r in 0.3f64..2.0) {
        let ball = SymmetricConvexBody::ball(3, r).unwrap();
        let a = measure_mc(&ball, 20_000, seed, 0.99).unwrap();
        let b = measure_mc(&ball, 20_000, seed, 0.99).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.ci_low <= a.value && a.value <= a.ci_high);
    }

    #[test]
    fn chernoff_bounds_dominate(k in 0.01f64..=1.0, n in 1usize..80, t in 0.001f64..50.0) {
        let exact = measure_ball_exact(k * (n as f64).sqrt(), n).unwrap().value;
        let bound = chernoff_bound(k, n).unwrap();
        prop_assert!(bound > 0.0 && bound <= 1.0);
        prop_assert!(exact <= bound * (1.0 + 1e-12));
        prop_assert!(bound <= markov_bound(k, t, n) * (1.0 + 1e-12));
        prop_assert!(optimal_t(k).unwrap() >= 0.0);
    }

    #[test]
    fn random_angle_pairs_satisfy_hypotheses(n in 1usize..=8, seed in any::<u64>()) {
        let pair = AnglePair::random(n, 0.05, 1.5, seed).unwrap();
        let q = build_from_angles(&pair).unwrap();
        let rep = check_hypotheses(&q, 1e-8).unwrap();
        prop_assert!(rep.validated, "{:?}", rep);
    }

    #[test]
    fn block_identities_hold(rows in 1usize..=8, cols in 1usize..=8, seed in any::<u64>(), norm in 0.0f64..0.95) {
        let m = contraction(rows, cols, seed, norm);
        prop_assert!(det_block_identity(&m).unwrap() <= 1e-10);
        prop_assert!(shao_block_inverse(&m).unwrap() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn shao_is_invariant_under_sign_of_m(m_dim in 1usize..3, n_dim in 1usize..3, seed in any::<u64>()) {
        let a = random_body(ShapeKind::Box, m_dim, 1.0, seed).unwrap();
        let b = random_body(ShapeKind::Ellipsoid, n_dim, 1.0, seed ^ 7).unwrap();
        let mat = contraction(m_dim, n_dim, seed, 0.7);
        let budget = Budget::monte_carlo(8192, seed, 0.99);
        let plus = check_shao(&a, &b, &mat, &budget).unwrap();
        let minus = check_shao(&a, &b, &(-&mat), &budget).unwrap();
        prop_assert_eq!(plus.rhs, minus.rhs);
        prop_assert_ne!(plus.verdict, Verdict::Violated);
    }

    #[test]
    fn h_profile_is_even(seed in any::<u64>(), y in prop::collection::vec(-0.8f64..0.8, 2)) {
        let a = random_body(ShapeKind::Polytope, 2, 1.0, seed).unwrap();
        let b = random_body(ShapeKind::Box, 2, 1.0, seed ^ 3).unwrap();
        let s = Matrix::from_row_slice(2, 2, &[1.0, 0.2, 0.2, 0.5]);
        let t = Matrix::identity(2, 2) * 0.7;
        let ys = vec![y.clone(), y.iter().map(|v| -v).collect()];
        let prof = h_profile(&a, &b, &s, &t, &ys, &Budget::monte_carlo(8192, seed, 0.99)).unwrap();
        prop_assert_eq!(prof.values[0], prof.values[1]);
    }
}
