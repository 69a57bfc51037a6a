//! Library values against frozen outputs of the independent references in
//! `common`. Each frozen constant is also re-derived here so a drift in
//! either side is caught.

mod common;

use gcorr::chernoff::{bound_vs_exact, chernoff_bound, constant_c0, find_c1, optimal_t};
use gcorr::gaussian::{measure, measure_ball_exact, measure_box_exact, normal_cdf, Budget};
use gcorr::inequality::{check_lemma1, check_shao, Verdict};
use gcorr::linalg::Matrix;
use gcorr::SymmetricConvexBody;

const CDF_AT_ONE: f64 = 0.841344746068539;
const CDF_AT_MINUS_2_5: f64 = 6.209665325771219e-3;
const UNIT_SQUARE: f64 = 0.466064942674382;
const BOX_HALF_TWO: f64 = 0.365501737519601;
const BALLS: [(f64, usize, f64); 5] = [
    (1.0, 1, 0.682689492137086),
    (1.0, 2, 0.393469340287367),
    (1.0, 3, 0.198748043098799),
    (2.0, 5, 0.450584048647220),
    (3.0, 10, 0.467896423625285),
];
/// `P(|U| ≤ 1, |V| ≤ 1)` for variances 4/3 and correlation −1/2.
const PARALLELOGRAM: f64 = 0.407928722191;
/// `P(|X| ≤ 1, |Y| ≤ 1)` at correlation 0.9.
const CORRELATED_SQUARE: f64 = 0.596359949725;
const C1: f64 = 0.374107204320732;

#[test]
fn frozen_constants_reproduce() {
    assert!((common::cdf(1.0) - CDF_AT_ONE).abs() < 1e-15);
    assert!((common::cdf(-2.5) - CDF_AT_MINUS_2_5).abs() < 1e-14);
    assert!(((2.0 * common::cdf(1.0) - 1.0).powi(2) - UNIT_SQUARE).abs() < 1e-14);
    for (r, n, v) in BALLS {
        assert!((common::ball_mass(r, n) - v).abs() < 1e-14, "r={r} n={n}");
    }
    let s = (4.0f64 / 3.0).sqrt();
    assert!((common::rectangle(s, s, -0.5, 1.0, 1.0) - PARALLELOGRAM).abs() < 1e-11);
    assert!((common::rectangle(1.0, 1.0, 0.9, 1.0, 1.0) - CORRELATED_SQUARE).abs() < 1e-11);
    let g = |c: f64| 3.0 * c * c * (1.0 - 3.0 * c * c).exp() - 0.75;
    assert!(g(C1 - 1e-12) < 0.0 && g(C1 + 1e-12) > 0.0);
}

#[test]
fn normal_cdf_matches_reference() {
    assert!((normal_cdf(1.0) - CDF_AT_ONE).abs() < 1e-13);
    assert!((normal_cdf(-2.5) - CDF_AT_MINUS_2_5).abs() < 1e-13);
    for i in -40..=40 {
        let x = i as f64 / 8.0;
        assert!((normal_cdf(x) - common::cdf(x)).abs() < 1e-13, "x={x}");
    }
}

#[test]
fn closed_form_measures_match_reference() {
    assert!((measure_box_exact(&[1.0, 1.0]).unwrap().value - UNIT_SQUARE).abs() < 1e-13);
    assert!((measure_box_exact(&[0.5, 2.0]).unwrap().value - BOX_HALF_TWO).abs() < 1e-13);
    for (r, n, v) in BALLS {
        assert!((measure_ball_exact(r, n).unwrap().value - v).abs() < 1e-13, "r={r} n={n}");
    }
    for n in 1..=12 {
        for r in [0.1, 0.5, 1.0, 1.7, 3.0, 5.0] {
            let lib = measure_ball_exact(r, n).unwrap().value;
            let reference = common::ball_mass(r, n);
            assert!((lib - reference).abs() <= 1e-12 * reference.max(1e-300) + 1e-15, "r={r} n={n}");
        }
    }
}

#[test]
fn quadrature_matches_closed_forms() {
    let budget = Budget::quadrature(1024);
    let ball = SymmetricConvexBody::ball(2, 1.0).unwrap();
    let rotated = SymmetricConvexBody::linear_image(Matrix::from_row_slice(2, 2, &[0.6, -0.8, 0.8, 0.6]), ball).unwrap();
    // a rotated ball is exact; compare quadrature of a generic region instead
    let region = gcorr::region::FnRegion::new(2, |x: &[f64]| x[0] * x[0] + x[1] * x[1] <= 1.0);
    let q = gcorr::gaussian::measure_region(&region, &budget).unwrap();
    assert!((q.value - BALLS[1].2).abs() < 1e-4);
    assert!((measure(&rotated, &budget).unwrap().value - BALLS[1].2).abs() < 1e-14);
}

#[test]
fn chernoff_matches_direct_evaluation() {
    let direct = (0.25f64 * 0.75f64.exp()).powi(2);
    assert!((chernoff_bound(0.5, 4).unwrap() - direct).abs() < 1e-15);
    let k = 3f64.sqrt() * C1;
    assert!((chernoff_bound(k, 2).unwrap() - 0.75).abs() < 1e-12);
    let t = optimal_t(k).unwrap();
    let plug = ((t * k * k).exp() / (1.0 + t)).powf(1.5);
    assert!((plug - chernoff_bound(k, 3).unwrap()).abs() < 1e-14);
    let c = find_c1(1e-12).unwrap();
    assert!((c - C1).abs() < 1e-11);
    assert!((constant_c0() - 0.5 * (-0.5f64).exp()).abs() < 1e-16);
    let cmp = bound_vs_exact(0.5, 7).unwrap();
    assert!((cmp.exact - common::ball_mass(0.5 * 7f64.sqrt(), 7)).abs() < 1e-13);
}

#[test]
fn lemma_and_shao_match_rectangle_probabilities() {
    let interval = SymmetricConvexBody::cube(vec![1.0]).unwrap();
    let budget = Budget::quadrature(2048);
    let gamma1 = 2.0 * CDF_AT_ONE - 1.0;

    let rep = check_lemma1(&interval, &interval, &Matrix::from_element(1, 1, 0.5), &budget).unwrap();
    assert!((rep.rhs.value - PARALLELOGRAM).abs() < 1e-4, "{}", rep.rhs.value);
    assert!((rep.lhs.value - 0.75f64.sqrt() * gamma1 * gamma1).abs() < 1e-14);
    assert_eq!(rep.verdict, Verdict::Confirmed);

    let rep = check_shao(&interval, &interval, &Matrix::from_element(1, 1, 0.9), &budget).unwrap();
    let expected = CORRELATED_SQUARE / 0.19f64.sqrt();
    assert!((rep.rhs.value - expected).abs() < 1e-4 * expected, "{}", rep.rhs.value);
    assert_eq!(rep.verdict, Verdict::Confirmed);
}
