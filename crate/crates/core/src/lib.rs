//! Least-resistance problems of Newton type.
//!
//! The crate provides:
//!
//! - closed-form minimizers of the two-dimensional resistance problem, both in
//!   the function form (a concave profile with bounded slopes, [`solver2d::solve_slopes`])
//!   and in the surface-area-measure form (an atomic measure on normal angles,
//!   [`solver2d::solve_angles`]);
//! - the convex envelope of the resistance integrand `1/(1+ξ²)` on a slope
//!   window ([`envelope`]);
//! - surface area measures of polygons and polytopes and the resistance
//!   functional written in terms of them ([`measure`]);
//! - the necessary-condition classifier for ridge singular points of an
//!   optimal body ([`ridge`]);
//! - brute-force oracles used to validate the closed forms ([`oracle`]);
//! - labeled region maps and a small deterministic CSV/SVG writer ([`region`]).

pub mod envelope;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod measure;
pub mod oracle;
pub mod region;
pub mod ridge;
pub mod solver2d;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{angle_from_slope, dir2, dir3, Angle, Direction2, Direction3, Slope};
pub use solver2d::{
    resistance_value, solve_angles, solve_slopes, AngleProblem, Atom, AtomicMeasure, CaseLabel,
    PiecewiseLinearConcave, SlopeProblem, Solution2D,
};

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
