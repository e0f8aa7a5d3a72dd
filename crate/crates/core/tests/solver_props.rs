//! Invariants of the closed-form 2D solver, checked against the envelope
//! and against the pair-enumeration oracle.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use common::{random_angle_problem, stratified_problems};
use newton_resist::envelope::{classify_window, p_bar, SlopeWindow};
use newton_resist::oracle::{oracle_pairs, GridSpec};
use newton_resist::solver2d::{
    angle_region, classify, lower_tangency_angle, solve_angles, solve_slopes, upper_tangency_angle,
    AngleProblem, SlopeProblem,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn angle_problem() -> impl Strategy<Value = AngleProblem> {
    (-FRAC_PI_2..FRAC_PI_2, -FRAC_PI_2..FRAC_PI_2, 0.01f64..0.99).prop_filter_map(
        "valid problem",
        |(a, b, t)| {
            let (phi1, phi2) = if a > b { (a, b) } else { (b, a) };
            (phi1 - phi2 > 1e-3)
                .then(|| AngleProblem::new(phi2 + t * (phi1 - phi2), phi1, phi2).ok())
                .flatten()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn measure_satisfies_moment_constraint(p in angle_problem()) {
        let s = solve_angles(&p).unwrap();
        prop_assert!(s.measure.moment_residual(p.phi0()) <= 1e-12);
        prop_assert!(!s.measure.is_empty() && s.measure.len() <= 2);
        for a in s.measure.atoms() {
            prop_assert!(a.weight > 0.0);
            prop_assert!(a.phi >= p.phi2() && a.phi <= p.phi1());
            prop_assert!(a.phi.abs() < FRAC_PI_2);
        }
    }

    #[test]
    fn function_matches_measure(p in angle_problem()) {
        let s = solve_angles(&p).unwrap();
        let [x, z] = s.function.end();
        prop_assert!((x - p.phi0().cos()).abs() < 1e-12);
        prop_assert!((z - p.phi0().sin()).abs() < 1e-12);
        prop_assert!((s.function.resistance() - s.value).abs() < 1e-12);
        let mut slopes: Vec<f64> = s.measure.atoms().iter().map(|a| a.phi.tan()).collect();
        slopes.sort_by(|a, b| b.total_cmp(a));
        let fs = s.function.slopes();
        prop_assert_eq!(fs.len(), slopes.len());
        for (a, b) in fs.iter().zip(&slopes) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn value_equals_scaled_envelope(k1 in -20.0f64..20.0, k2 in -20.0f64..20.0, t in 0.01f64..0.99, x0 in 0.1f64..5.0) {
        prop_assume!((k1 - k2).abs() > 1e-2);
        let (hi, lo) = (k1.max(k2), k1.min(k2));
        let k = lo + t * (hi - lo);
        let p = SlopeProblem::new(hi, lo, k, x0).unwrap();
        let s = solve_slopes(&p).unwrap();
        let w = SlopeWindow::new(lo, hi).unwrap();
        let expected = p.x0() * p_bar(w, k).unwrap();
        prop_assert!((s.value - expected).abs() <= 1e-12, "{} vs {}", s.value, expected);
        prop_assert_eq!(s.case.region(), classify_window(w).case);
    }

    #[test]
    fn solver_beats_every_grid_measure(p in angle_problem()) {
        let s = solve_angles(&p).unwrap();
        let o = oracle_pairs(&p, &GridSpec::uniform(41)).unwrap();
        prop_assert!(o.value >= s.value - 1e-12);
    }
}

#[test]
fn all_case_labels_reachable_and_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in stratified_problems(&mut rng, 50) {
        let s = solve_angles(&p).unwrap();
        assert_eq!(s.case, classify(&p));
        assert_eq!(s.case.region(), angle_region(p.phi1(), p.phi2()));
        if s.case.single_atom() {
            assert_eq!(s.measure.len(), 1);
        }
    }
}

#[test]
fn angle_and_slope_tangencies_agree() {
    for &k2 in &[-10.0, -1.0, -0.5, 0.0, 0.2, 0.5] {
        let from_angle = upper_tangency_angle(f64::atan(k2)).tan();
        let from_slope = newton_resist::envelope::right_tangency(k2);
        assert!((from_angle - from_slope).abs() < 1e-12);
        let from_angle = lower_tangency_angle(f64::atan(-k2)).tan();
        let from_slope = newton_resist::envelope::left_tangency(-k2);
        assert!((from_angle - from_slope).abs() < 1e-12);
    }
}

#[test]
fn grid_refinement_converges() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let p = random_angle_problem(&mut rng);
        let s = solve_angles(&p).unwrap();
        let coarse = oracle_pairs(&p, &GridSpec::uniform(201)).unwrap().value - s.value;
        let fine = oracle_pairs(&p, &GridSpec::uniform(2001)).unwrap().value - s.value;
        assert!((-1e-12..=1e-5).contains(&fine), "gap {fine}");
        assert!(fine <= coarse + 1e-12);
        let o = oracle_pairs(&p, &GridSpec::uniform(2001)).unwrap();
        assert!(o.measure.moment_residual(p.phi0()) <= 1e-10);
    }
}

#[test]
fn case_ii_is_the_straight_segment() {
    for &(phi0, phi1, phi2) in &[(0.8, 1.2, FRAC_PI_6 + 0.01), (-0.8, -FRAC_PI_6, -1.4)] {
        let p = AngleProblem::new(phi0, phi1, phi2).unwrap();
        let s = solve_angles(&p).unwrap();
        assert_eq!(s.measure.len(), 1);
        assert_eq!(s.value, phi0.cos().powi(3));
    }
}

#[test]
fn solutions_round_trip_through_json() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for p in stratified_problems(&mut rng, 5) {
        let s = solve_angles(&p).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: newton_resist::Solution2D = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(text.contains(&format!("\"case\":\"{}\"", s.case)));
    }
}
