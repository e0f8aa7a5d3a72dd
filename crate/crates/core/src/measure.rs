//! Surface area measures and the resistance functional.
//!
//! For a convex body `C` the surface area measure `ν_C` assigns to a set of
//! unit normals the boundary area carrying those normals. For polygons and
//! polytopes it is atomic: one atom per edge or facet. The resistance of a
//! body moving downward along the `z`-axis is
//!
//! ```text
//! 𝓕(C) = ∫ (n_z)₊³ dν_C(n)
//! ```
//!
//! and for the body under a concave profile `u` it coincides with
//! `∫ 1/(1+|∇u|²)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::unit2;
use crate::hull::{self, cross, dot, norm, sub, Vec3};
use crate::solver2d::PiecewiseLinearConcave;

/// Tolerance on `|Σ area·normal|` relative to total area for facet lists.
pub const BALANCE_TOL_3D: f64 = 1e-9;

/// A convex polygon in the `(x, z)` plane, vertices counterclockwise.
///
/// Bodies built by [`body_from_function`] may be degenerate (two vertices
/// joined by a pair of opposite edges); everything else is strictly convex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexBody2D {
    vertices: Vec<[f64; 2]>,
}

impl ConvexBody2D {
    /// Validates a polygon: repeated and collinear vertices are merged, the
    /// rest must turn left at every vertex and wind exactly once. A clockwise
    /// polygon is reversed.
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Degenerate("non-finite vertex coordinate".into()));
        }
        let mut v = simplify(vertices);
        if v.len() < 3 {
            return Err(Error::Degenerate("polygon has zero area".into()));
        }
        if signed_area(&v) < 0.0 {
            v.reverse();
        }
        let n = v.len();
        let mut turning = 0.0;
        for i in 0..n {
            let a = edge(&v, i);
            let b = edge(&v, (i + 1) % n);
            let c = a[0] * b[1] - a[1] * b[0];
            if c <= 0.0 {
                return Err(Error::NotConvex(format!(
                    "vertex {} turns clockwise",
                    (i + 1) % n
                )));
            }
            turning += c.atan2(a[0] * b[0] + a[1] * b[1]);
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::NotConvex("boundary winds more than once".into()));
        }
        Ok(ConvexBody2D { vertices: v })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn translated(&self, dx: f64, dz: f64) -> Self {
        ConvexBody2D {
            vertices: self
                .vertices
                .iter()
                .map(|p| [p[0] + dx, p[1] + dz])
                .collect(),
        }
    }
}

fn edge(v: &[[f64; 2]], i: usize) -> [f64; 2] {
    let b = v[(i + 1) % v.len()];
    [b[0] - v[i][0], b[1] - v[i][1]]
}

fn signed_area(v: &[[f64; 2]]) -> f64 {
    let n = v.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

/// Drops repeated vertices and vertices lying inside a straight run.
fn simplify(mut v: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    v.dedup();
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let straight = (0..n).find(|&i| {
            let a = edge(&v, (i + n - 1) % n);
            let b = edge(&v, i);
            let c = a[0] * b[1] - a[1] * b[0];
            let d = a[0] * b[0] + a[1] * b[1];
            c.abs() <= 1e-14 * a[0].hypot(a[1]) * b[0].hypot(b[1]) && d > 0.0
        });
        match straight {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureAtom2D {
    /// Normal angle `φ ∈ (-π, π]`, normal `(-sin φ, cos φ)`.
    pub phi: f64,
    /// Edge length.
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SurfaceMeasure2D {
    pub atoms: Vec<MeasureAtom2D>,
}

impl SurfaceMeasure2D {
    /// `|Σ mass·e_φ|` in the max norm.
    pub fn balance_residual(&self) -> f64 {
        let (x, z) = self.atoms.iter().fold((0.0, 0.0), |(x, z), a| {
            let e = unit2(a.phi);
            (x + a.mass * e.x, z + a.mass * e.z)
        });
        x.abs().max(z.abs())
    }
}

/// Normal angle of the outward normal `n = (n_x, n_z)`, in `(-π, π]`.
pub fn normal_angle(nx: f64, nz: f64) -> f64 {
    // Adding 0.0 turns -0.0 into +0.0 so that straight-down maps to π.
    let phi = (-nx + 0.0).atan2(nz);
    if phi <= -PI {
        PI
    } else {
        phi
    }
}

pub fn surface_measure_2d(b: &ConvexBody2D) -> SurfaceMeasure2D {
    let v = &b.vertices;
    let atoms = (0..v.len())
        .filter_map(|i| {
            let [dx, dz] = edge(v, i);
            let mass = dx.hypot(dz);
            // Counterclockwise boundary: the outward normal is the edge turned right.
            (mass > 0.0).then(|| MeasureAtom2D {
                phi: normal_angle(dz / mass, -dx / mass),
                mass,
            })
        })
        .collect();
    SurfaceMeasure2D { atoms }
}

/// `Σ mass·(cos φ)₊³` over the measure.
pub fn measure_resistance_2d(m: &SurfaceMeasure2D) -> f64 {
    m.atoms
        .iter()
        .map(|a| a.mass * a.phi.cos().max(0.0).powi(3))
        .sum()
}

pub fn resistance_2d(b: &ConvexBody2D) -> f64 {
    measure_resistance_2d(&surface_measure_2d(b))
}

/// The body bounded above by the graph of `f` and below by the chord joining
/// its endpoints. For a linear `f` this is the degenerate two-edge body.
pub fn body_from_function(f: &PiecewiseLinearConcave) -> ConvexBody2D {
    let bp = f.breakpoints();
    let mut vertices = Vec::with_capacity(bp.len());
    vertices.push(bp[0]);
    vertices.extend(bp[1..].iter().rev().copied());
    ConvexBody2D { vertices }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec3,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolytope3D {
    facets: Vec<Facet>,
}

impl ConvexPolytope3D {
    /// Facets with any nonzero normal (normalized here) and nonnegative area.
    /// The list must close up: `|Σ area·normal| <= 1e-9·max(1, total area)`.
    pub fn from_facets(facets: Vec<Facet>) -> Result<Self> {
        let mut out = Vec::with_capacity(facets.len());
        for f in facets {
            let len = norm(f.normal);
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::Degenerate(
                    "facet normal must be nonzero and finite".into(),
                ));
            }
            if !(f.area.is_finite() && f.area >= 0.0) {
                return Err(Error::Degenerate(format!(
                    "facet area {} is invalid",
                    f.area
                )));
            }
            out.push(Facet {
                normal: f.normal.map(|c| c / len),
                area: f.area,
            });
        }
        let p = ConvexPolytope3D { facets: out };
        let total: f64 = p.facets.iter().map(|f| f.area).sum();
        let residual = p.balance_residual();
        if residual > BALANCE_TOL_3D * total.max(1.0) {
            return Err(Error::Unbalanced { residual });
        }
        Ok(p)
    }

    /// Convex hull of a point cloud. Coplanar hull triangles are merged
    /// into one facet.
    pub fn from_vertices(points: &[Vec3]) -> Result<Self> {
        let h = hull::convex_hull(points)?;
        let mut groups: Vec<(Vec3, Vec3)> = Vec::new();
        for f in 0..h.faces.len() {
            let a = h.area_vector(f);
            let len = norm(a);
            if len == 0.0 {
                continue;
            }
            let n = a.map(|c| c / len);
            match groups.iter_mut().find(|(gn, _)| norm(sub(*gn, n)) < 1e-9) {
                Some((_, sum)) => *sum = [sum[0] + a[0], sum[1] + a[1], sum[2] + a[2]],
                None => groups.push((n, a)),
            }
        }
        let facets = groups
            .into_iter()
            .map(|(_, sum)| {
                let area = norm(sum);
                Facet {
                    normal: sum.map(|c| c / area),
                    area,
                }
            })
            .collect();
        Ok(ConvexPolytope3D { facets })
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn balance_residual(&self) -> f64 {
        let s = self.facets.iter().fold([0.0; 3], |acc, f| {
            [
                acc[0] + f.area * f.normal[0],
                acc[1] + f.area * f.normal[1],
                acc[2] + f.area * f.normal[2],
            ]
        });
        s.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Rotation by `angle` about the vertical axis.
    pub fn rotated_about_z(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        ConvexPolytope3D {
            facets: self
                .facets
                .iter()
                .map(|f| {
                    let [x, y, z] = f.normal;
                    Facet {
                        normal: [c * x - s * y, s * x + c * y, z],
                        area: f.area,
                    }
                })
                .collect(),
        }
    }
}

/// `Σ area·((n_z)₊)³`.
pub fn resistance_3d(p: &ConvexPolytope3D) -> f64 {
    p.facets
        .iter()
        .map(|f| f.area * f.normal[2].max(0.0).powi(3))
        .sum()
}

/// Rotation of a point cloud by `angle` about the axis through the origin
/// along `axis`.
pub fn rotate_points(points: &[Vec3], axis: Vec3, angle: f64) -> Vec<Vec3> {
    let k = axis.map(|c| c / norm(axis));
    let (s, c) = angle.sin_cos();
    points
        .iter()
        .map(|&p| {
            let kxp = cross(k, p);
            let kdp = dot(k, p);
            [0, 1, 2].map(|i| p[i] * c + kxp[i] * s + k[i] * kdp * (1.0 - c))
        })
        .collect()
}
