//! Incremental 3D convex hull.
//!
//! Beneath-beyond insertion: each point outside the current hull removes the
//! faces it can see and is joined to the horizon. Faces are triangles wound
//! counterclockwise when viewed from outside. Quadratic in the number of
//! points, which is plenty for the polytopes this crate deals with.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

#[inline]
pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone)]
pub struct Hull {
    pub points: Vec<Vec3>,
    /// Outward-oriented triangles, indices into `points`.
    pub faces: Vec<[usize; 3]>,
}

impl Hull {
    /// Area vector `½ (b-a)×(c-a)` of face `f`: outward normal times area.
    pub fn area_vector(&self, f: usize) -> Vec3 {
        let [a, b, c] = self.faces[f].map(|i| self.points[i]);
        let n = cross(sub(b, a), sub(c, a));
        [0.5 * n[0], 0.5 * n[1], 0.5 * n[2]]
    }
}

struct Face {
    v: [usize; 3],
    normal: Vec3,
    offset: f64,
}

impl Face {
    fn new(points: &[Vec3], v: [usize; 3]) -> Self {
        let [a, b, c] = v.map(|i| points[i]);
        let n = cross(sub(b, a), sub(c, a));
        let len = norm(n);
        let normal = if len > 0.0 {
            [n[0] / len, n[1] / len, n[2] / len]
        } else {
            [0.0; 3]
        };
        Face {
            v,
            normal,
            offset: dot(normal, a),
        }
    }

    fn distance(&self, p: Vec3) -> f64 {
        dot(self.normal, p) - self.offset
    }
}

pub fn convex_hull(points: &[Vec3]) -> Result<Hull> {
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("non-finite vertex coordinate".into()));
    }
    if points.len() < 4 {
        return Err(Error::Degenerate(
            "a polytope needs at least 4 vertices".into(),
        ));
    }
    let scale = points
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let eps = 1e-10 * scale;

    // Initial tetrahedron: far point, far from the line, far from the plane.
    let i0 = 0;
    let i1 = argmax(points, |p| norm(sub(p, points[i0])));
    let dir = sub(points[i1], points[i0]);
    if norm(dir) <= eps {
        return Err(Error::Degenerate("all vertices coincide".into()));
    }
    let i2 = argmax(points, |p| norm(cross(dir, sub(p, points[i0]))) / norm(dir));
    let n = cross(dir, sub(points[i2], points[i0]));
    if norm(n) / norm(dir) <= eps {
        return Err(Error::Degenerate("vertices are collinear".into()));
    }
    let i3 = argmax(points, |p| dot(n, sub(p, points[i0])).abs() / norm(n));
    if dot(n, sub(points[i3], points[i0])).abs() / norm(n) <= eps {
        return Err(Error::Degenerate("vertices are coplanar".into()));
    }

    let centroid = {
        let s = [i0, i1, i2, i3].iter().fold([0.0; 3], |acc, &i| {
            [
                acc[0] + points[i][0],
                acc[1] + points[i][1],
                acc[2] + points[i][2],
            ]
        });
        [s[0] / 4.0, s[1] / 4.0, s[2] / 4.0]
    };
    let mut faces: Vec<Face> = [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]]
        .into_iter()
        .map(|v| {
            let f = Face::new(points, v);
            if f.distance(centroid) > 0.0 {
                Face::new(points, [v[0], v[2], v[1]])
            } else {
                f
            }
        })
        .collect();

    for (pi, &p) in points.iter().enumerate() {
        if [i0, i1, i2, i3].contains(&pi) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| f.distance(p) > eps).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        // Directed edges of the visible region whose twin belongs to a hidden face.
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                owner.insert((f.v[k], f.v[(k + 1) % 3]), fi);
            }
        }
        let mut horizon = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            if !visible[fi] {
                continue;
            }
            for k in 0..3 {
                let (a, b) = (f.v[k], f.v[(k + 1) % 3]);
                match owner.get(&(b, a)) {
                    Some(&twin) if !visible[twin] => horizon.push((a, b)),
                    Some(_) => {}
                    None => {
                        return Err(Error::Internal("hull surface is not closed".into()));
                    }
                }
            }
        }
        let mut next: Vec<Face> = faces
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        next.extend(
            horizon
                .into_iter()
                .map(|(a, b)| Face::new(points, [a, b, pi])),
        );
        faces = next;
    }

    Ok(Hull {
        points: points.to_vec(),
        faces: faces.into_iter().map(|f| f.v).collect(),
    })
}

fn argmax(points: &[Vec3], f: impl Fn(Vec3) -> f64) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &p) in points.iter().enumerate() {
        let v = f(p);
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}
