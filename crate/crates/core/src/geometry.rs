//! Angles, slopes and unit directions.
//!
//! Angles are the canonical parameter everywhere in the crate. A slope `k`
//! corresponds to the angle `arctan k`, and a normal angle `φ` to the unit
//! vector `e_φ = (-sin φ, cos φ)`, which is the upward normal of a segment
//! with slope `tan φ`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An angle in radians within `[-π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);
    pub const RIGHT: Angle = Angle(FRAC_PI_2);

    pub fn new(radians: f64) -> Result<Self> {
        if radians.is_nan() {
            return Err(Error::NotANumber { name: "angle" });
        }
        if !(-FRAC_PI_2..=FRAC_PI_2).contains(&radians) {
            return Err(Error::OutOfRange {
                name: "angle",
                value: radians,
                range: "[-pi/2, pi/2]",
            });
        }
        Ok(Angle(radians))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    /// The slope `tan φ`; the vertical angles map to `±∞`.
    pub fn slope(self) -> Slope {
        if self.0 == FRAC_PI_2 {
            Slope(f64::INFINITY)
        } else if self.0 == -FRAC_PI_2 {
            Slope(f64::NEG_INFINITY)
        } else {
            Slope(self.0.tan())
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A dimensionless slope. Infinite values are allowed, NaN is not.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Slope(f64);

impl Slope {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::NotANumber { name: "slope" });
        }
        Ok(Slope(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn angle(self) -> Angle {
        angle_from_slope(self)
    }
}

/// `arctan k`, with `±∞` mapped to `±π/2`.
pub fn angle_from_slope(k: Slope) -> Angle {
    Angle(k.0.atan())
}

/// Unit vector `(-sin φ, cos φ)` in the `(x, z)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction2 {
    pub x: f64,
    pub z: f64,
}

impl Direction2 {
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.z)
    }

    /// 2D cross product `self × other`.
    pub fn cross(&self, other: &Direction2) -> f64 {
        self.x * other.z - self.z * other.x
    }
}

pub fn dir2(phi: Angle) -> Direction2 {
    unit2(phi.0)
}

/// `(-sin φ, cos φ)` for any real `φ`. Surface-measure atoms use normal angles
/// in `(-π, π]`, so this does not go through [`Angle`].
#[inline]
pub fn unit2(phi: f64) -> Direction2 {
    let (s, c) = phi.sin_cos();
    Direction2 { x: -s, z: c }
}

/// Unit vector `(-sin φ, cos φ sin θ, cos φ cos θ)`: a normal in the plane
/// orthogonal to an edge that makes angle `θ` with the horizontal plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction3(pub [f64; 3]);

impl Direction3 {
    pub fn norm(&self) -> f64 {
        let [a, b, c] = self.0;
        (a * a + b * b + c * c).sqrt()
    }
}

pub fn dir3(phi: Angle, theta: Angle) -> Result<Direction3> {
    let t = theta.0;
    if !(0.0..FRAC_PI_2).contains(&t) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: t,
            range: "[0, pi/2)",
        });
    }
    let (sp, cp) = phi.0.sin_cos();
    let (st, ct) = t.sin_cos();
    Ok(Direction3([-sp, cp * st, cp * ct]))
}
