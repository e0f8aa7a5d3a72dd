//! Convex envelope of the resistance integrand on a slope window.
//!
//! The integrand `p(ξ) = 1/(1+ξ²)` is convex on `(-∞, -1/√3]` and
//! `[1/√3, ∞)` and concave in between. On a window `[κ₂, κ₁]` its convex
//! envelope `p̄` is one of four shapes:
//!
//! - **I**: the chord joining the two endpoints;
//! - **II**: `p` itself (the window misses the concave part);
//! - **III**: a chord from `κ₂` tangent to `p` at `k̄ = -κ₂ + √(1+κ₂²)`, then `p`;
//! - **IV**: `p` up to `k̄ = -κ₁ - √(1+κ₁²)`, then a chord tangent there
//!   running to `κ₁`.
//!
//! The optimal 2D profile only uses slopes where `p̄ = p`, and its resistance
//! is `x₀·p̄(K)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `1/√3`, the inflection points of `p` are at `±INFLECTION`.
pub const INFLECTION: f64 = 0.577_350_269_189_625_8;

/// Largest slope magnitude a window may have.
pub const MAX_SLOPE: f64 = 1e6;

#[inline]
pub fn p(xi: f64) -> f64 {
    1.0 / (1.0 + xi * xi)
}

#[inline]
pub fn p_prime(xi: f64) -> f64 {
    let d = 1.0 + xi * xi;
    -2.0 * xi / (d * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeWindow {
    k2: f64,
    k1: f64,
}

impl SlopeWindow {
    /// A window `[k2, k1]` with finite ends, `k2 < k1` and `|k| <= MAX_SLOPE`.
    pub fn new(k2: f64, k1: f64) -> Result<Self> {
        for (name, v) in [("k2", k2), ("k1", k1)] {
            if v.is_nan() {
                return Err(Error::NotANumber { name });
            }
            if v.abs() > MAX_SLOPE {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[-1e6, 1e6] (clamp infinite slopes first)",
                });
            }
        }
        if k2 >= k1 {
            return Err(Error::Precondition(format!(
                "slope window needs k2 < k1, got k2 = {k2}, k1 = {k1}"
            )));
        }
        Ok(SlopeWindow { k2, k1 })
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn contains(&self, xi: f64) -> bool {
        self.k2 <= xi && xi <= self.k1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnvelopeCase {
    I,
    II,
    III,
    IV,
}

impl EnvelopeCase {
    pub fn label(self) -> &'static str {
        match self {
            EnvelopeCase::I => "i",
            EnvelopeCase::II => "ii",
            EnvelopeCase::III => "iii",
            EnvelopeCase::IV => "iv",
        }
    }
}

/// Affine piece `slope·ξ + intercept` on `[from, to]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearPiece {
    pub from: f64,
    pub to: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl LinearPiece {
    fn chord(a: f64, b: f64) -> Self {
        let (pa, pb) = (p(a), p(b));
        let slope = (pb - pa) / (b - a);
        LinearPiece {
            from: a,
            to: b,
            slope,
            intercept: pa - slope * a,
        }
    }

    /// Evaluates by interpolating from the nearer endpoint.
    pub fn eval(&self, xi: f64) -> f64 {
        let (pa, pb) = (p(self.from), p(self.to));
        let t = (xi - self.from) / (self.to - self.from);
        if t <= 0.5 {
            pa + t * (pb - pa)
        } else {
            pb + (1.0 - t) * (pa - pb)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeDescription {
    pub window: SlopeWindow,
    pub case: EnvelopeCase,
    /// Tangency slope `k̄` (cases III and IV).
    pub tangency: Option<f64>,
    pub linear: Option<LinearPiece>,
    /// Interval where `p̄ = p`.
    pub curved: Option<(f64, f64)>,
}

/// `-κ₂ + √(1+κ₂²)`: the root of `k² + 2κ₂k - 1 = 0` right of `κ₂`.
pub fn right_tangency(k2: f64) -> f64 {
    (1.0 + k2 * k2).sqrt() - k2
}

/// `-κ₁ - √(1+κ₁²)`: the mirror root, left of `κ₁`.
pub fn left_tangency(k1: f64) -> f64 {
    -k1 - (1.0 + k1 * k1).sqrt()
}

pub fn classify_window(w: SlopeWindow) -> EnvelopeDescription {
    let SlopeWindow { k2, k1 } = w;
    let sum = k1 + k2;
    let case = if sum > (1.0 + k2 * k2).sqrt() {
        if k2 >= INFLECTION {
            EnvelopeCase::II
        } else {
            EnvelopeCase::III
        }
    } else if sum < -(1.0 + k1 * k1).sqrt() {
        if k1 <= -INFLECTION {
            EnvelopeCase::II
        } else {
            EnvelopeCase::IV
        }
    } else {
        EnvelopeCase::I
    };

    let mut desc = EnvelopeDescription {
        window: w,
        case,
        tangency: None,
        linear: None,
        curved: None,
    };
    match case {
        EnvelopeCase::I => desc.linear = Some(LinearPiece::chord(k2, k1)),
        EnvelopeCase::II => desc.curved = Some((k2, k1)),
        EnvelopeCase::III => {
            let kt = right_tangency(k2);
            desc.tangency = Some(kt);
            desc.linear = Some(LinearPiece::chord(k2, kt));
            desc.curved = Some((kt, k1));
        }
        EnvelopeCase::IV => {
            let kt = left_tangency(k1);
            desc.tangency = Some(kt);
            desc.curved = Some((k2, kt));
            desc.linear = Some(LinearPiece::chord(kt, k1));
        }
    }
    desc
}

impl EnvelopeDescription {
    pub fn eval(&self, xi: f64) -> Result<f64> {
        if xi.is_nan() {
            return Err(Error::NotANumber { name: "xi" });
        }
        if !self.window.contains(xi) {
            return Err(Error::OutOfRange {
                name: "xi",
                value: xi,
                range: "the slope window [k2, k1]",
            });
        }
        if let Some(lin) = &self.linear {
            if lin.from <= xi && xi <= lin.to {
                return Ok(lin.eval(xi));
            }
        }
        Ok(p(xi))
    }
}

/// Value of the convex envelope of `p` on `w` at `xi`.
pub fn p_bar(w: SlopeWindow, xi: f64) -> Result<f64> {
    classify_window(w).eval(xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(k2: f64, k1: f64) -> SlopeWindow {
        SlopeWindow::new(k2, k1).unwrap()
    }

    #[test]
    fn integrand_values() {
        assert_eq!(p(0.0), 1.0);
        assert_eq!(p(1.0), 0.5);
        assert!((p(1.0 / 3f64.sqrt()) - 0.75).abs() < 1e-15);
        assert!((INFLECTION - 1.0 / 3f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_window(window(-1.0, 1.0)).case, EnvelopeCase::I);
        assert_eq!(classify_window(window(1.0, 3.0)).case, EnvelopeCase::II);
        let d = classify_window(window(0.0, 2.0));
        assert_eq!(d.case, EnvelopeCase::III);
        assert_eq!(d.tangency, Some(1.0));
        assert_eq!(classify_window(window(-2.0, 0.0)).case, EnvelopeCase::IV);
        assert_eq!(classify_window(window(-3.0, -1.0)).case, EnvelopeCase::II);
    }

    #[test]
    fn boundary_of_case_one_is_case_one() {
        // k1 + k2 = sqrt(1 + k2^2) exactly: k2 = 0, k1 = 1.
        assert_eq!(classify_window(window(0.0, 1.0)).case, EnvelopeCase::I);
        assert_eq!(classify_window(window(-1.0, 0.0)).case, EnvelopeCase::I);
    }

    #[test]
    fn envelope_examples() {
        assert!((p_bar(window(-1.0, 1.0), 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((p_bar(window(1.0, 3.0), 2.0).unwrap() - 0.2).abs() < 1e-15);
        assert!((p_bar(window(0.0, 2.0), 0.5).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn evaluation_outside_window_fails() {
        assert!(p_bar(window(0.0, 2.0), 2.5).is_err());
        assert!(p_bar(window(0.0, 2.0), -1e-9).is_err());
    }

    #[test]
    fn invalid_windows() {
        assert!(SlopeWindow::new(1.0, 1.0).is_err());
        assert!(SlopeWindow::new(2.0, 1.0).is_err());
        assert!(SlopeWindow::new(f64::NEG_INFINITY, 1.0).is_err());
        assert!(SlopeWindow::new(f64::NAN, 1.0).is_err());
        assert!(SlopeWindow::new(-1e6, 1e6).is_ok());
    }

    #[test]
    fn tangency_roots_solve_the_quadratic() {
        for k2 in [-3.0, -0.5, 0.0, 0.3, 0.57] {
            let k = right_tangency(k2);
            assert!((k * k + 2.0 * k2 * k - 1.0).abs() < 1e-12);
            assert!(k > INFLECTION);
        }
        for k1 in [3.0, 0.5, 0.0, -0.3, -0.57] {
            let k = left_tangency(k1);
            assert!((k * k + 2.0 * k1 * k - 1.0).abs() < 1e-12);
            assert!(k < -INFLECTION);
        }
    }
}
