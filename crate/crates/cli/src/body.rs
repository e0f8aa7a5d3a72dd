//! Body files for the `resistance` command.
//!
//! ```json
//! {"vertices": [[x, z], ...]}                       // polygon
//! {"vertices": [[x, y, z], ...]}                    // polytope, hull taken
//! {"facets": [{"normal": [nx, ny, nz], "area": a}]} // polytope
//! ```

use newton_resist::measure::{
    measure_resistance_2d, resistance_3d, surface_measure_2d, ConvexBody2D, ConvexPolytope3D,
    Facet, MeasureAtom2D,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetFile {
    facets: Vec<Facet>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    vertices: Vec<Vec<f64>>,
}

pub enum Body {
    Polygon(ConvexBody2D),
    Polytope(ConvexPolytope3D),
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("malformed body file: {}", msg.into()))
}

pub fn parse(text: &str) -> Result<Body, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| malformed("expected a JSON object"))?;
    if obj.contains_key("facets") {
        let f: FacetFile = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
        return Ok(Body::Polytope(ConvexPolytope3D::from_facets(f.facets)?));
    }
    if !obj.contains_key("vertices") {
        return Err(malformed("expected a \"vertices\" or \"facets\" key"));
    }
    let v: VertexFile = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
    let dim = v.vertices.first().map_or(0, Vec::len);
    if v.vertices.iter().any(|p| p.len() != dim) {
        return Err(malformed("vertices must all have the same length"));
    }
    if v.vertices.iter().flatten().any(|c| !c.is_finite()) {
        return Err(malformed("vertex coordinates must be finite"));
    }
    match dim {
        2 => {
            let pts = v.vertices.iter().map(|p| [p[0], p[1]]).collect();
            Ok(Body::Polygon(ConvexBody2D::new(pts)?))
        }
        3 => {
            let pts: Vec<[f64; 3]> = v.vertices.iter().map(|p| [p[0], p[1], p[2]]).collect();
            Ok(Body::Polytope(ConvexPolytope3D::from_vertices(&pts)?))
        }
        _ => Err(malformed("vertices must be [x, z] or [x, y, z] arrays")),
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Atoms {
    Polygon(Vec<MeasureAtom2D>),
    Polytope(Vec<Facet>),
}

#[derive(Debug, Serialize)]
pub struct ResistanceResult {
    pub dimension: u8,
    pub value: f64,
    pub atoms: Atoms,
    pub balance_residual: f64,
}

pub fn evaluate(body: &Body) -> ResistanceResult {
    match body {
        Body::Polygon(b) => {
            let m = surface_measure_2d(b);
            ResistanceResult {
                dimension: 2,
                value: measure_resistance_2d(&m),
                balance_residual: m.balance_residual(),
                atoms: Atoms::Polygon(m.atoms),
            }
        }
        Body::Polytope(p) => ResistanceResult {
            dimension: 3,
            value: resistance_3d(p),
            balance_residual: p.balance_residual(),
            atoms: Atoms::Polytope(p.facets().to_vec()),
        },
    }
}
