#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use newton_resist::solver2d::{classify, AngleProblem, CaseLabel, PiecewiseLinearConcave};
use rand::Rng;

/// A random valid angle problem: sorted pair in the open square, phi0 between.
pub fn random_angle_problem<R: Rng>(rng: &mut R) -> AngleProblem {
    loop {
        let a = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
        let b = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
        let (phi1, phi2) = if a > b { (a, b) } else { (b, a) };
        if phi1 - phi2 < 1e-3 {
            continue;
        }
        let t: f64 = rng.random_range(0.01..0.99);
        let phi0 = phi2 + t * (phi1 - phi2);
        if let Ok(p) = AngleProblem::new(phi0, phi1, phi2) {
            return p;
        }
    }
}

/// `per_case` random problems for each of the six case labels.
pub fn stratified_problems<R: Rng>(rng: &mut R, per_case: usize) -> Vec<AngleProblem> {
    let mut buckets: Vec<Vec<AngleProblem>> = vec![Vec::new(); CaseLabel::ALL.len()];
    while buckets.iter().any(|b| b.len() < per_case) {
        let p = random_angle_problem(rng);
        let k = CaseLabel::ALL
            .iter()
            .position(|&c| c == classify(&p))
            .unwrap();
        if buckets[k].len() < per_case {
            buckets[k].push(p);
        }
    }
    buckets.into_iter().flatten().collect()
}

/// A random concave profile from `(0, 0)` with `segments` pieces whose slopes
/// lie in `[lo, hi]`.
pub fn random_concave<R: Rng>(
    rng: &mut R,
    segments: usize,
    lo: f64,
    hi: f64,
) -> PiecewiseLinearConcave {
    let mut slopes: Vec<f64> = (0..segments).map(|_| rng.random_range(lo..=hi)).collect();
    slopes.sort_by(|a, b| b.total_cmp(a));
    let widths: Vec<f64> = (0..segments).map(|_| rng.random_range(0.01..1.0)).collect();
    PiecewiseLinearConcave::from_slopes(&slopes, &widths).unwrap()
}

/// Lower convex hull of points sorted by x (monotone chain).
pub fn lower_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Piecewise-linear interpolation on a hull sorted by x.
pub fn interpolate(hull: &[(f64, f64)], x: f64) -> f64 {
    let k = hull.partition_point(|p| p.0 < x).clamp(1, hull.len() - 1);
    let (a, b) = (hull[k - 1], hull[k]);
    a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0)
}
