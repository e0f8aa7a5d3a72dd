//! Necessary conditions on the dihedral angle at a ridge point of an
//! optimal body.
//!
//! A ridge point is described by the angle `θ` between its edge and the
//! horizontal plane and by the angles `φ₂ < φ₁` of the two face normals,
//! measured in the plane orthogonal to the edge. Only the two-atom case (i)
//! of the 2D problem can occur at such a point, and at regular points the
//! surface is either horizontal or inclined by at least `π/4`. This gives
//! three regimes:
//!
//! - **a** (`θ >= π/4`): `2φ₁ + φ₂ <= π/2` and `φ₁ + 2φ₂ >= -π/2`;
//! - **b** (`0 < θ < π/4`): additionally `|φ₁|, |φ₂| >= φ*(θ)` with
//!   `φ* = arccos((1/√2)/cos θ)`;
//! - **c** (`θ = 0`): one of the points `(π/4, 0)`, `(0, -π/4)`, or the
//!   quadrangle `φ₁ >= π/4`, `φ₂ <= -π/4` cut by the regime-a inequalities.
//!
//! The conditions are necessary only: "admissible" means "not excluded".

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for matching the two isolated points of regime c.
pub const EXCEPTIONAL_TOL: f64 = 1e-12;

pub const UPPER: &str = "2phi1+phi2<=pi/2";
pub const LOWER: &str = "phi1+2phi2>=-pi/2";
pub const ABS_PHI1: &str = "abs(phi1)>=phi_star";
pub const ABS_PHI2: &str = "abs(phi2)>=phi_star";
pub const PHI1_QUARTER: &str = "phi1>=pi/4";
pub const PHI2_QUARTER: &str = "phi2<=-pi/4";
pub const EXCEPTIONAL: &str = "exceptional-point";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DihedralData {
    theta: f64,
    phi1: f64,
    phi2: f64,
}

impl DihedralData {
    /// Requires `θ ∈ [0, π/2)` and `-π/2 < φ₂ < φ₁ < π/2`.
    pub fn new(theta: f64, phi1: f64, phi2: f64) -> Result<Self> {
        for (name, v) in [("theta", theta), ("phi1", phi1), ("phi2", phi2)] {
            if v.is_nan() {
                return Err(Error::NotANumber { name });
            }
        }
        if !(0.0..FRAC_PI_2).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi/2)",
            });
        }
        for (name, v) in [("phi1", phi1), ("phi2", phi2)] {
            if !(v > -FRAC_PI_2 && v < FRAC_PI_2) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "(-pi/2, pi/2)",
                });
            }
        }
        if phi2 >= phi1 {
            return Err(Error::Precondition(format!(
                "phi2 must be smaller than phi1 (phi2 = {phi2}, phi1 = {phi1})"
            )));
        }
        Ok(DihedralData { theta, phi1, phi2 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    A,
    B,
    C,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::A => "a",
            Regime::B => "b",
            Regime::C => "c",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RidgeVerdict {
    pub admissible: bool,
    pub regime: Regime,
    /// Names of the failed inequalities; empty iff admissible.
    pub violated: Vec<&'static str>,
    /// `φ*(θ)`, present in regime b.
    pub phi_star: Option<f64>,
    /// Set when the point matched one of the isolated points of regime c.
    pub exceptional: bool,
}

/// `arccos((1/√2)/cos θ)` for `0 < θ < π/4`.
pub fn phi_star(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_4) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            range: "(0, pi/4)",
        });
    }
    Ok((FRAC_1_SQRT_2 / theta.cos()).min(1.0).acos())
}

pub fn regime(theta: f64) -> Regime {
    if theta >= FRAC_PI_4 {
        Regime::A
    } else if theta > 0.0 {
        Regime::B
    } else {
        Regime::C
    }
}

/// The two isolated admissible points of regime c.
pub const EXCEPTIONAL_POINTS: [(f64, f64); 2] = [(FRAC_PI_4, 0.0), (0.0, -FRAC_PI_4)];

fn is_exceptional(phi1: f64, phi2: f64) -> bool {
    EXCEPTIONAL_POINTS
        .iter()
        .any(|&(a, b)| (phi1 - a).abs() <= EXCEPTIONAL_TOL && (phi2 - b).abs() <= EXCEPTIONAL_TOL)
}

pub fn classify_ridge(d: &DihedralData) -> RidgeVerdict {
    classify_ridge_with(d, 0.0)
}

/// Like [`classify_ridge`], but any `θ < theta_eps` is treated as `θ = 0`.
pub fn classify_ridge_with(d: &DihedralData, theta_eps: f64) -> RidgeVerdict {
    let theta = if d.theta < theta_eps { 0.0 } else { d.theta };
    let (phi1, phi2) = (d.phi1, d.phi2);
    let regime = regime(theta);
    let mut violated = Vec::new();
    let mut phi_star_value = None;

    if regime == Regime::C && is_exceptional(phi1, phi2) {
        return RidgeVerdict {
            admissible: true,
            regime,
            violated,
            phi_star: None,
            exceptional: true,
        };
    }
    if 2.0 * phi1 + phi2 > FRAC_PI_2 {
        violated.push(UPPER);
    }
    if phi1 + 2.0 * phi2 < -FRAC_PI_2 {
        violated.push(LOWER);
    }
    match regime {
        Regime::A => {}
        Regime::B => {
            let ps = phi_star(theta).expect("theta in (0, pi/4)");
            phi_star_value = Some(ps);
            if phi1.abs() < ps {
                violated.push(ABS_PHI1);
            }
            if phi2.abs() < ps {
                violated.push(ABS_PHI2);
            }
        }
        Regime::C => {
            if phi1 < FRAC_PI_4 {
                violated.push(PHI1_QUARTER);
            }
            if phi2 > -FRAC_PI_4 {
                violated.push(PHI2_QUARTER);
            }
            if !violated.is_empty() {
                violated.push(EXCEPTIONAL);
            }
        }
    }
    RidgeVerdict {
        admissible: violated.is_empty(),
        regime,
        violated,
        phi_star: phi_star_value,
        exceptional: false,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RidgeCell {
    /// Column index (φ₁ axis).
    pub i: usize,
    /// Row index (φ₂ axis).
    pub j: usize,
    pub phi1: f64,
    pub phi2: f64,
    pub verdict: RidgeVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RidgeGrid {
    pub theta: f64,
    pub resolution: usize,
    /// Cells with `j < i`, ordered by `j` then `i`.
    pub cells: Vec<RidgeCell>,
}

impl RidgeGrid {
    /// `resolution × resolution` mask of admissible cells, indexed `[j][i]`.
    pub fn admissible_mask(&self) -> Vec<Vec<bool>> {
        let n = self.resolution;
        let mut mask = vec![vec![false; n]; n];
        for c in &self.cells {
            mask[c.j][c.i] = c.verdict.admissible;
        }
        mask
    }
}

/// Center of cell `i` when `[-π/2, π/2]` is split into `n` equal cells.
pub fn cell_center(i: usize, n: usize) -> f64 {
    let h = std::f64::consts::PI / n as f64;
    -FRAC_PI_2 + (i as f64 + 0.5) * h
}

/// Index of the half-open cell `[lo, lo + h)` containing `x`.
pub fn cell_index(x: f64, n: usize) -> usize {
    let h = std::f64::consts::PI / n as f64;
    (((x + FRAC_PI_2) / h).floor().max(0.0) as usize).min(n - 1)
}

/// Verdicts on the cell centers of an `N × N` grid over `(-π/2, π/2)²`,
/// restricted to cells below the diagonal (`φ₂ < φ₁`).
///
/// In regime c the cells containing the two isolated admissible points are
/// sampled at those points, so they appear in the grid at any resolution.
pub fn admissible_region_sample(theta: f64, resolution: usize) -> Result<RidgeGrid> {
    admissible_region_sample_with(theta, resolution, 0.0)
}

pub fn admissible_region_sample_with(
    theta: f64,
    resolution: usize,
    theta_eps: f64,
) -> Result<RidgeGrid> {
    if resolution < 2 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: resolution as f64,
            range: "[2, inf)",
        });
    }
    // Validates theta.
    DihedralData::new(theta, 0.1, 0.0)?;
    let n = resolution;
    let regime_c = regime(if theta < theta_eps { 0.0 } else { theta }) == Regime::C;
    let snapped: Vec<((usize, usize), (f64, f64))> = if regime_c {
        EXCEPTIONAL_POINTS
            .iter()
            .map(|&(a, b)| ((cell_index(a, n), cell_index(b, n)), (a, b)))
            .collect()
    } else {
        Vec::new()
    };

    let cells = (0..n)
        .into_par_iter()
        .flat_map_iter(|j| {
            let snapped = &snapped;
            (j + 1..n).map(move |i| {
                let (phi1, phi2) = snapped
                    .iter()
                    .find(|(ij, _)| *ij == (i, j))
                    .map(|&(_, p)| p)
                    .unwrap_or((cell_center(i, n), cell_center(j, n)));
                let d = DihedralData { theta, phi1, phi2 };
                RidgeCell {
                    i,
                    j,
                    phi1,
                    phi2,
                    verdict: classify_ridge_with(&d, theta_eps),
                }
            })
        })
        .collect();
    Ok(RidgeGrid {
        theta,
        resolution,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn verdict(theta: f64, phi1: f64, phi2: f64) -> RidgeVerdict {
        classify_ridge(&DihedralData::new(theta, phi1, phi2).unwrap())
    }

    #[test]
    fn exceptional_points_at_zero_theta() {
        let v = verdict(0.0, FRAC_PI_4, 0.0);
        assert!(v.admissible && v.exceptional);
        assert_eq!(v.regime, Regime::C);
        assert!(verdict(0.0, 0.0, -FRAC_PI_4).admissible);
        assert!(verdict(0.0, FRAC_PI_4 + 1e-13, 1e-13).admissible);
        assert!(!verdict(0.0, FRAC_PI_4 + 1e-9, 0.0).admissible);
    }

    #[test]
    fn regime_c_quadrangle() {
        let v = verdict(0.0, FRAC_PI_6, -FRAC_PI_6);
        assert!(!v.admissible);
        assert_eq!(v.violated, vec![PHI1_QUARTER, PHI2_QUARTER, EXCEPTIONAL]);
        assert!(verdict(0.0, 0.9, -0.9).admissible);
        assert!(verdict(0.0, FRAC_PI_4, -FRAC_PI_4).admissible);
    }

    #[test]
    fn regime_a_fixture() {
        let v = verdict(FRAC_PI_3, FRAC_PI_4, -FRAC_PI_4);
        assert!(v.admissible);
        assert_eq!(v.regime, Regime::A);
        let v = verdict(FRAC_PI_3, 1.0, 0.0);
        assert_eq!(v.violated, vec![UPPER]);
        let v = verdict(FRAC_PI_4, 0.0, -1.0);
        assert_eq!(v.regime, Regime::A);
        assert_eq!(v.violated, vec![LOWER]);
    }

    #[test]
    fn regime_b_fixture() {
        let v = verdict(FRAC_PI_6, 0.2, -0.2);
        assert!(!v.admissible);
        assert_eq!(v.regime, Regime::B);
        assert_eq!(v.violated, vec![ABS_PHI1, ABS_PHI2]);
        assert!((v.phi_star.unwrap() - 0.615_479_708_670_387_3).abs() < 1e-12);
    }

    #[test]
    fn phi_star_values() {
        // arccos(sqrt(2/3)) is the value at pi/6.
        let expected = (2.0f64 / 3.0).sqrt().acos();
        assert!((phi_star(FRAC_PI_6).unwrap() - expected).abs() < 1e-15);
        assert!(phi_star(FRAC_PI_4 - 1e-9).unwrap() < 1e-4);
        assert!((phi_star(1e-9).unwrap() - FRAC_PI_4).abs() < 1e-8);
        assert!(phi_star(0.0).is_err());
        assert!(phi_star(FRAC_PI_4).is_err());
        let mut prev = f64::INFINITY;
        for k in 1..1000 {
            let v = phi_star(FRAC_PI_4 * k as f64 / 1000.0).unwrap();
            assert!(v < prev && v > 0.0 && v < FRAC_PI_4);
            prev = v;
        }
    }

    #[test]
    fn theta_eps_routes_to_regime_c() {
        let d = DihedralData::new(1e-6, FRAC_PI_4, 0.0).unwrap();
        assert_eq!(classify_ridge(&d).regime, Regime::B);
        let v = classify_ridge_with(&d, 1e-3);
        assert_eq!(v.regime, Regime::C);
        assert!(v.admissible);
    }

    #[test]
    fn invalid_dihedral_data() {
        assert!(DihedralData::new(1.6, 0.0, -0.3).is_err());
        assert!(DihedralData::new(-0.1, 0.0, -0.3).is_err());
        assert!(DihedralData::new(0.0, 0.0, 0.3).is_err());
        assert!(DihedralData::new(0.0, FRAC_PI_2, 0.3).is_err());
    }

    #[test]
    fn grid_shape_and_snapping() {
        let g = admissible_region_sample(0.0, 8).unwrap();
        assert_eq!(g.cells.len(), 8 * 7 / 2);
        let exceptional = g.cells.iter().filter(|c| c.verdict.exceptional).count();
        assert_eq!(exceptional, 2);
        assert!(admissible_region_sample(0.0, 1).is_err());
        assert!(admissible_region_sample(2.0, 10).is_err());
    }
}
