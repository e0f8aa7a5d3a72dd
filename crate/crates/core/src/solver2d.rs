//! Closed-form minimizer of the 2D resistance problem.
//!
//! Two equivalent formulations are solved:
//!
//! - **slope form**: minimize `∫₀^{x₀} 1/(1+u'²) dx` over concave `u` with
//!   `u(0) = 0`, `u(x₀) = z₀` and `κ₂ <= u' <= κ₁`;
//! - **angle form**: minimize `Φ(μ) = ∫ cos³φ dμ` over measures `μ` on
//!   `[φ₂, φ₁]` with `∫ e_φ dμ = e_{φ₀}`, where `e_φ = (-sin φ, cos φ)`.
//!
//! A segment of the profile with slope `tan φ` and length `w` is an atom of
//! weight `w` at `φ`, so both problems have the same minimizer. The optimum
//! always has at most two atoms; which ones depends on where `(φ₁, φ₂)` lies
//! relative to the lines `2φ₁ + φ₂ = π/2`, `φ₁ + 2φ₂ = -π/2` and
//! `φ₂ = π/6`, `φ₁ = -π/6`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::envelope::{EnvelopeCase, SlopeWindow};
use crate::error::{Error, Result};
use crate::geometry::{unit2, Direction2};

/// Atoms lighter than this are dropped from solver output.
pub const WEIGHT_CUTOFF: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleProblem {
    phi0: f64,
    phi1: f64,
    phi2: f64,
}

impl AngleProblem {
    /// Requires `-π/2 <= φ₂ < φ₀ < φ₁ <= π/2`.
    ///
    /// The pair `(φ₁, φ₂) = (π/2, -π/2)` is rejected: both admissible walls are
    /// vertical and the infimum `0` is not attained.
    pub fn new(phi0: f64, phi1: f64, phi2: f64) -> Result<Self> {
        for (name, v) in [("phi0", phi0), ("phi1", phi1), ("phi2", phi2)] {
            if v.is_nan() {
                return Err(Error::NotANumber { name });
            }
            if !(-FRAC_PI_2..=FRAC_PI_2).contains(&v) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[-pi/2, pi/2]",
                });
            }
        }
        if !(phi2 < phi0 && phi0 < phi1) {
            return Err(Error::Precondition(format!(
                "phi0 must lie strictly between phi2 and phi1 (phi2 = {phi2}, phi0 = {phi0}, phi1 = {phi1})"
            )));
        }
        if phi1 == FRAC_PI_2 && phi2 == -FRAC_PI_2 {
            return Err(Error::Precondition(
                "phi1 = pi/2 together with phi2 = -pi/2 admits no minimizer".into(),
            ));
        }
        Ok(AngleProblem { phi0, phi1, phi2 })
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }
}

/// The slope-form problem, stored normalized so that `x₀² + z₀² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeProblem {
    k1: f64,
    k2: f64,
    k: f64,
    x0: f64,
    z0: f64,
}

impl SlopeProblem {
    /// Builds the problem with endpoint `(x₀, K·x₀)`, rescaled onto the unit
    /// circle. Resistance is proportional to length and the case structure is
    /// scale invariant, so the rescaled problem carries all the information.
    pub fn new(k1: f64, k2: f64, k: f64, x0: f64) -> Result<Self> {
        SlopeWindow::new(k2, k1)?;
        if k.is_nan() {
            return Err(Error::NotANumber { name: "k0" });
        }
        if !(k2 < k && k < k1) {
            return Err(Error::Precondition(format!(
                "k0 must lie strictly between k2 and k1 (k2 = {k2}, k0 = {k}, k1 = {k1})"
            )));
        }
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(Error::OutOfRange {
                name: "x0",
                value: x0,
                range: "(0, inf)",
            });
        }
        let x0 = 1.0 / (1.0 + k * k).sqrt();
        Ok(SlopeProblem {
            k1,
            k2,
            k,
            x0,
            z0: k * x0,
        })
    }

    /// The unit-chord problem with the given slope bounds and `K = k`.
    pub fn normalized(k1: f64, k2: f64, k: f64) -> Result<Self> {
        Self::new(k1, k2, k, 1.0)
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    /// `K = z₀/x₀`.
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn window(&self) -> SlopeWindow {
        // Validated in the constructor.
        SlopeWindow::new(self.k2, self.k1).expect("valid window")
    }

    pub fn to_angles(&self) -> Result<AngleProblem> {
        AngleProblem::new(self.k.atan(), self.k1.atan(), self.k2.atan())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii-a")]
    IIIa,
    #[serde(rename = "iii-b")]
    IIIb,
    #[serde(rename = "iv-a")]
    IVa,
    #[serde(rename = "iv-b")]
    IVb,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 6] = [
        CaseLabel::I,
        CaseLabel::II,
        CaseLabel::IIIa,
        CaseLabel::IIIb,
        CaseLabel::IVa,
        CaseLabel::IVb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::IIIa => "iii-a",
            CaseLabel::IIIb => "iii-b",
            CaseLabel::IVa => "iv-a",
            CaseLabel::IVb => "iv-b",
        }
    }

    /// The region of the `(φ₁, φ₂)` plane this case belongs to.
    pub fn region(self) -> EnvelopeCase {
        match self {
            CaseLabel::I => EnvelopeCase::I,
            CaseLabel::II => EnvelopeCase::II,
            CaseLabel::IIIa | CaseLabel::IIIb => EnvelopeCase::III,
            CaseLabel::IVa | CaseLabel::IVb => EnvelopeCase::IV,
        }
    }

    pub fn single_atom(self) -> bool {
        matches!(self, CaseLabel::II | CaseLabel::IIIb | CaseLabel::IVb)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub phi: f64,
    pub weight: f64,
}

/// A finitely supported measure on normal angles, atoms sorted by angle.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !(a.phi.is_finite() && a.weight.is_finite() && a.weight > 0.0) {
                return Err(Error::Precondition(format!(
                    "atom ({}, {}) needs a finite angle and a positive weight",
                    a.phi, a.weight
                )));
            }
        }
        atoms.sort_by(|a, b| a.phi.total_cmp(&b.phi));
        Ok(AtomicMeasure { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `∫ e_φ dμ`.
    pub fn moment(&self) -> Direction2 {
        self.atoms
            .iter()
            .fold(Direction2 { x: 0.0, z: 0.0 }, |acc, a| {
                let e = unit2(a.phi);
                Direction2 {
                    x: acc.x + a.weight * e.x,
                    z: acc.z + a.weight * e.z,
                }
            })
    }

    /// Componentwise max-norm of `∫ e_φ dμ - e_{φ₀}`.
    pub fn moment_residual(&self, phi0: f64) -> f64 {
        let m = self.moment();
        let e = unit2(phi0);
        (m.x - e.x).abs().max((m.z - e.z).abs())
    }
}

/// `Φ(μ) = Σ wᵢ cos³φᵢ`.
pub fn resistance_value(m: &AtomicMeasure) -> f64 {
    m.atoms.iter().map(|a| a.weight * a.phi.cos().powi(3)).sum()
}

/// A concave piecewise-linear function on `[0, x₀]` given by its breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearConcave {
    breakpoints: Vec<[f64; 2]>,
}

impl PiecewiseLinearConcave {
    /// Checks that `x` increases strictly, the graph starts at the origin and
    /// slopes do not increase (up to rounding).
    pub fn new(breakpoints: Vec<[f64; 2]>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Precondition("need at least two breakpoints".into()));
        }
        if breakpoints[0] != [0.0, 0.0] {
            return Err(Error::Precondition("function must start at (0, 0)".into()));
        }
        if breakpoints.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("breakpoints must be finite".into()));
        }
        let f = PiecewiseLinearConcave { breakpoints };
        let segs: Vec<_> = f.segments().collect();
        if segs.iter().any(|&(dx, _)| dx <= 0.0) {
            return Err(Error::Precondition(
                "breakpoint x must increase strictly".into(),
            ));
        }
        for pair in segs.windows(2) {
            let ((ax, az), (bx, bz)) = (pair[0], pair[1]);
            let cross = ax * bz - az * bx;
            let scale = ax.hypot(az) * bx.hypot(bz);
            if cross > 1e-12 * scale {
                return Err(Error::NotConvex("slopes must not increase".into()));
            }
        }
        Ok(f)
    }

    /// Builds the function from slopes (non-increasing) and positive widths.
    pub fn from_slopes(slopes: &[f64], widths: &[f64]) -> Result<Self> {
        if slopes.len() != widths.len() {
            return Err(Error::Precondition(
                "slopes and widths differ in length".into(),
            ));
        }
        let mut pts = Vec::with_capacity(slopes.len() + 1);
        let (mut x, mut z) = (0.0, 0.0);
        pts.push([x, z]);
        for (&k, &w) in slopes.iter().zip(widths) {
            x += w;
            z += k * w;
            pts.push([x, z]);
        }
        Self::new(pts)
    }

    pub fn breakpoints(&self) -> &[[f64; 2]] {
        &self.breakpoints
    }

    /// `(Δx, Δz)` of every linear piece, left to right.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .map(|w| (w[1][0] - w[0][0], w[1][1] - w[0][1]))
    }

    pub fn slopes(&self) -> Vec<f64> {
        self.segments().map(|(dx, dz)| dz / dx).collect()
    }

    pub fn end(&self) -> [f64; 2] {
        *self.breakpoints.last().expect("at least two breakpoints")
    }

    /// `F(u) = ∫ 1/(1+u'²) dx`, integrated exactly piece by piece.
    pub fn resistance(&self) -> f64 {
        self.segments()
            .map(|(dx, dz)| dx * dx * dx / (dx * dx + dz * dz))
            .sum()
    }

    /// Value at `x`, by linear interpolation; `None` outside `[0, x₀]`.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let bp = &self.breakpoints;
        if x < 0.0 || x > self.end()[0] {
            return None;
        }
        let i = bp.partition_point(|b| b[0] < x).max(1);
        let ([xa, za], [xb, zb]) = (bp[i - 1], bp[i.min(bp.len() - 1)]);
        if xb == xa {
            return Some(zb);
        }
        Some(za + (zb - za) * (x - xa) / (xb - xa))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution2D {
    pub case: CaseLabel,
    pub measure: AtomicMeasure,
    pub function: PiecewiseLinearConcave,
    pub value: f64,
}

/// Region of the `(φ₁, φ₂)` plane: (i) if `2φ₁+φ₂ <= π/2` and
/// `φ₁+2φ₂ >= -π/2`, otherwise (ii) when `φ₁ <= -π/6` or `φ₂ >= π/6`, otherwise
/// (iii) or (iv) depending on which inequality fails.
pub fn angle_region(phi1: f64, phi2: f64) -> EnvelopeCase {
    let upper = 2.0 * phi1 + phi2 <= FRAC_PI_2;
    let lower = phi1 + 2.0 * phi2 >= -FRAC_PI_2;
    if upper && lower {
        EnvelopeCase::I
    } else if phi1 <= -FRAC_PI_6 || phi2 >= FRAC_PI_6 {
        EnvelopeCase::II
    } else if !upper {
        EnvelopeCase::III
    } else {
        EnvelopeCase::IV
    }
}

/// `(π - 2φ₂)/4`, the tangency angle of case (iii).
pub fn upper_tangency_angle(phi2: f64) -> f64 {
    (PI - 2.0 * phi2) / 4.0
}

/// `-(π + 2φ₁)/4`, the tangency angle of case (iv).
pub fn lower_tangency_angle(phi1: f64) -> f64 {
    -(PI + 2.0 * phi1) / 4.0
}

pub fn classify(p: &AngleProblem) -> CaseLabel {
    match angle_region(p.phi1, p.phi2) {
        EnvelopeCase::I => CaseLabel::I,
        EnvelopeCase::II => CaseLabel::II,
        EnvelopeCase::III => {
            if p.phi0 >= upper_tangency_angle(p.phi2) {
                CaseLabel::IIIb
            } else {
                CaseLabel::IIIa
            }
        }
        EnvelopeCase::IV => {
            if p.phi0 <= lower_tangency_angle(p.phi1) {
                CaseLabel::IVb
            } else {
                CaseLabel::IVa
            }
        }
    }
}

/// Weights `(w_a, w_b)` with `w_a e_a + w_b e_b = e_{φ₀}`, by Cramer's rule on
/// the computed unit vectors.
pub fn solve_pair(phi_a: f64, phi_b: f64, phi0: f64) -> Result<(f64, f64)> {
    let (ea, eb, e0) = (unit2(phi_a), unit2(phi_b), unit2(phi0));
    let det = ea.cross(&eb);
    if det == 0.0 || !det.is_finite() {
        return Err(Error::Internal(format!(
            "singular moment system for atoms {phi_a} and {phi_b}"
        )));
    }
    Ok((e0.cross(&eb) / det, ea.cross(&e0) / det))
}

/// The broken line whose segments are the atoms of `m`, steepest first.
pub fn function_from_measure(m: &AtomicMeasure) -> Result<PiecewiseLinearConcave> {
    let mut pts = vec![[0.0, 0.0]];
    let (mut x, mut z) = (0.0, 0.0);
    for a in m.atoms.iter().rev() {
        let (s, c) = a.phi.sin_cos();
        x += a.weight * c;
        z += a.weight * s;
        pts.push([x, z]);
    }
    PiecewiseLinearConcave::new(pts)
}

pub fn solve_angles(p: &AngleProblem) -> Result<Solution2D> {
    let case = classify(p);
    let pair = match case {
        CaseLabel::I => Some((p.phi1, p.phi2)),
        CaseLabel::IIIa => Some((upper_tangency_angle(p.phi2), p.phi2)),
        CaseLabel::IVa => Some((p.phi1, lower_tangency_angle(p.phi1))),
        CaseLabel::II | CaseLabel::IIIb | CaseLabel::IVb => None,
    };
    let atoms = match pair {
        Some((a, b)) => {
            let (wa, wb) = solve_pair(a, b, p.phi0)?;
            if wa < 0.0 || wb < 0.0 {
                return Err(Error::Internal(format!(
                    "negative weight in case {case}: ({wa}, {wb})"
                )));
            }
            [Atom { phi: a, weight: wa }, Atom { phi: b, weight: wb }]
                .into_iter()
                .filter(|at| at.weight >= WEIGHT_CUTOFF)
                .collect()
        }
        None => vec![Atom {
            phi: p.phi0,
            weight: 1.0,
        }],
    };
    let measure = AtomicMeasure::new(atoms)?;
    let function = function_from_measure(&measure)?;
    let value = resistance_value(&measure);
    Ok(Solution2D {
        case,
        measure,
        function,
        value,
    })
}

pub fn solve_slopes(p: &SlopeProblem) -> Result<Solution2D> {
    solve_angles(&p.to_angles()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    fn ap(phi0: f64, phi1: f64, phi2: f64) -> AngleProblem {
        AngleProblem::new(phi0, phi1, phi2).unwrap()
    }

    #[test]
    fn case_one_example() {
        let s = solve_angles(&ap(0.0, FRAC_PI_4, -FRAC_PI_4)).unwrap();
        assert_eq!(s.case, CaseLabel::I);
        let atoms = s.measure.atoms();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0].phi, -FRAC_PI_4);
        assert_eq!(atoms[1].phi, FRAC_PI_4);
        for a in atoms {
            assert!((a.weight - SQRT_2 / 2.0).abs() < 1e-15);
        }
        assert!((s.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn case_two_example() {
        let phi0 = 2f64.atan();
        let s = solve_angles(&ap(phi0, 3f64.atan(), FRAC_PI_4)).unwrap();
        assert_eq!(s.case, CaseLabel::II);
        assert_eq!(
            s.measure.atoms(),
            &[Atom {
                phi: phi0,
                weight: 1.0
            }]
        );
        assert!((s.value - 5f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn case_three_a_example() {
        let s = solve_angles(&ap(0.5f64.atan(), 2f64.atan(), 0.0)).unwrap();
        assert_eq!(s.case, CaseLabel::IIIa);
        let atoms = s.measure.atoms();
        assert_eq!(atoms[0].phi, 0.0);
        assert!((atoms[0].weight - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(atoms[1].phi, FRAC_PI_4);
        assert!((atoms[1].weight - 0.4f64.sqrt()).abs() < 1e-15);
        // Profile: slope 1 for z0, then flat for x0 - z0.
        let x0 = 2.0 / 5f64.sqrt();
        let z0 = 1.0 / 5f64.sqrt();
        assert!((s.value - (z0 * 0.5 + (x0 - z0))).abs() < 1e-15);
        assert!((s.value - 1.5 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn case_four_mirrors_case_three() {
        let s = solve_angles(&ap(-(0.5f64.atan()), 0.0, -(2f64.atan()))).unwrap();
        assert_eq!(s.case, CaseLabel::IVa);
        assert!((s.value - 1.5 / 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.measure.atoms()[0].phi, -FRAC_PI_4);
    }

    #[test]
    fn b_cases_are_single_atoms() {
        let s = solve_angles(&ap(1.0, 1.2, 0.0)).unwrap();
        assert_eq!(s.case, CaseLabel::IIIb);
        assert_eq!(s.measure.len(), 1);
        let s = solve_angles(&ap(-1.0, 0.0, -1.2)).unwrap();
        assert_eq!(s.case, CaseLabel::IVb);
        assert_eq!(s.measure.len(), 1);
    }

    #[test]
    fn tangency_boundary_is_labeled_b() {
        let phi2 = 0.1;
        let t = upper_tangency_angle(phi2);
        let s = solve_angles(&ap(t, 1.4, phi2)).unwrap();
        assert_eq!(s.case, CaseLabel::IIIb);
    }

    #[test]
    fn region_boundaries_resolve_to_case_one() {
        // 2*phi1 + phi2 = pi/2 exactly.
        assert_eq!(angle_region(FRAC_PI_4, 0.0), EnvelopeCase::I);
        assert_eq!(angle_region(0.0, -FRAC_PI_4), EnvelopeCase::I);
        assert_eq!(angle_region(1.0, FRAC_PI_6), EnvelopeCase::II);
        assert_eq!(angle_region(-FRAC_PI_6, -1.0), EnvelopeCase::II);
    }

    #[test]
    fn precondition_errors() {
        let err = AngleProblem::new(0.3, 0.3, 0.1).unwrap_err();
        assert!(err.to_string().contains("phi0 must lie strictly between"));
        assert!(AngleProblem::new(0.0, 1.7, -0.1).is_err());
        assert!(AngleProblem::new(0.0, FRAC_PI_2, -FRAC_PI_2).is_err());
        assert!(AngleProblem::new(f64::NAN, 1.0, -1.0).is_err());
        assert!(SlopeProblem::new(1.0, -1.0, 2.0, 1.0).is_err());
        assert!(SlopeProblem::new(1.0, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn vertical_wall_on_one_side() {
        let s = solve_angles(&ap(0.0, FRAC_PI_2, -0.2)).unwrap();
        assert_eq!(s.case, CaseLabel::IIIa);
        assert!(s.measure.moment_residual(0.0) < 1e-15);
    }

    #[test]
    fn slope_examples() {
        let s = solve_slopes(&SlopeProblem::new(1.0, -1.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!(s.case, CaseLabel::I);
        assert!((s.value - 0.5).abs() < 1e-15);
        assert!((s.function.eval(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((s.function.eval(0.25).unwrap() - 0.25).abs() < 1e-15);
        assert!((s.function.eval(0.75).unwrap() - 0.25).abs() < 1e-15);

        let p = SlopeProblem::new(3.0, 1.0, 2.0, 1.0 / 5f64.sqrt()).unwrap();
        let s = solve_slopes(&p).unwrap();
        assert_eq!(s.case, CaseLabel::II);
        assert!((s.value - 1.0 / (5.0 * 5f64.sqrt())).abs() < 1e-15);
        assert!((s.function.slopes()[0] - 2.0).abs() < 1e-15);

        let p = SlopeProblem::normalized(0.0, -10.0, -0.5).unwrap();
        let s = solve_slopes(&p).unwrap();
        assert_eq!(s.case, CaseLabel::IVa);
        let k = s.function.slopes();
        assert_eq!(k[0], 0.0);
        assert!((k[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn slope_problem_is_normalized() {
        let p = SlopeProblem::new(3.0, -3.0, 0.5, 7.0).unwrap();
        assert!((p.x0().hypot(p.z0()) - 1.0).abs() < 1e-15);
        assert!((p.z0() / p.x0() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn concave_function_validation() {
        assert!(PiecewiseLinearConcave::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]]).is_err());
        assert!(PiecewiseLinearConcave::new(vec![[0.0, 0.0], [0.0, 1.0]]).is_err());
        assert!(PiecewiseLinearConcave::new(vec![[0.1, 0.0], [1.0, 0.0]]).is_err());
        let f = PiecewiseLinearConcave::from_slopes(&[1.0, 0.0, -1.0], &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(f.end(), [3.0, 0.0]);
        assert!((f.resistance() - 2.0).abs() < 1e-15);
        assert_eq!(f.eval(3.5), None);
    }

    #[test]
    fn resistance_value_examples() {
        let m = |v: Vec<(f64, f64)>| {
            AtomicMeasure::new(
                v.into_iter()
                    .map(|(phi, weight)| Atom { phi, weight })
                    .collect(),
            )
            .unwrap()
        };
        assert_eq!(resistance_value(&m(vec![(0.0, 1.0)])), 1.0);
        assert!(resistance_value(&m(vec![(FRAC_PI_2, 5.0)])).abs() < 1e-30);
        let v = resistance_value(&m(vec![
            (FRAC_PI_4, SQRT_2 / 2.0),
            (-FRAC_PI_4, SQRT_2 / 2.0),
        ]));
        assert!((v - 0.5).abs() < 1e-15);
        assert!(AtomicMeasure::new(vec![Atom {
            phi: 0.0,
            weight: 0.0
        }])
        .is_err());
    }

    #[test]
    fn case_labels_serialize_as_roman() {
        let names: Vec<_> = CaseLabel::ALL.iter().map(|c| c.as_str()).collect();
        assert_eq!(names, ["i", "ii", "iii-a", "iii-b", "iv-a", "iv-b"]);
    }
}
