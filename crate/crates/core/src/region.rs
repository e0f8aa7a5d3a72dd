//! Labeled region maps of the parameter planes and their CSV/SVG renderings.
//!
//! Three maps are available:
//!
//! - `lemma1`: the `(κ₁, κ₂)` slope plane on `[-3, 3]²`, labeled by the shape
//!   of the convex envelope (i)–(iv);
//! - `lemma2`: the same partition in angles, on `(φ₁, φ₂) ∈ [-π/2, π/2]²`;
//! - `ridge`: admissible ridge angles `(φ₁, φ₂)` for a fixed edge angle `θ`.
//!
//! Each axis is split into `N` equal cells, every cell is classified at its
//! center, and only cells strictly below the diagonal (second coordinate
//! smaller than the first) are kept.
//!
//! CSV floats use Rust's shortest round-trip formatting (at most 17
//! significant digits). Columns:
//!
//! - lemma1: `k1,k2,label`
//! - lemma2: `phi1,phi2,label`
//! - ridge: `phi1,phi2,admissible,regime,violated` (violated names joined by `;`)

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envelope::{classify_window, SlopeWindow};
use crate::error::{Error, Result};
use crate::ridge::{admissible_region_sample_with, RidgeGrid};
use crate::solver2d::angle_region;
use crate::svg::{push_rect, SvgDocument};

/// Half-width of the slope window shown by the `lemma1` map.
pub const SLOPE_RANGE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Lemma1,
    Lemma2,
    Ridge,
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(MapKind::Lemma1),
            "lemma2" => Ok(MapKind::Lemma2),
            "ridge" => Ok(MapKind::Ridge),
            other => Err(Error::Precondition(format!("unknown map '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
    pub x: f64,
    pub y: f64,
    pub label: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionMap {
    pub kind: MapKind,
    pub resolution: usize,
    pub theta: Option<f64>,
    pub range: (f64, f64),
    pub cells: Vec<Cell>,
    ridge: Option<RidgeGrid>,
}

fn center(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    lo + (i as f64 + 0.5) * (hi - lo) / n as f64
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: n as f64,
            range: "[2, inf)",
        });
    }
    Ok(())
}

fn lower_triangle(
    n: usize,
    lo: f64,
    hi: f64,
    label: impl Fn(f64, f64) -> &'static str + Sync,
) -> Vec<Cell> {
    (0..n)
        .into_par_iter()
        .flat_map_iter(|j| {
            let label = &label;
            (j + 1..n).map(move |i| {
                let (x, y) = (center(lo, hi, i, n), center(lo, hi, j, n));
                Cell {
                    i,
                    j,
                    x,
                    y,
                    label: label(x, y),
                }
            })
        })
        .collect()
}

pub fn lemma1_map(resolution: usize) -> Result<RegionMap> {
    check_resolution(resolution)?;
    let cells = lower_triangle(resolution, -SLOPE_RANGE, SLOPE_RANGE, |k1, k2| {
        let w = SlopeWindow::new(k2, k1).expect("cell below the diagonal");
        classify_window(w).case.label()
    });
    Ok(RegionMap {
        kind: MapKind::Lemma1,
        resolution,
        theta: None,
        range: (-SLOPE_RANGE, SLOPE_RANGE),
        cells,
        ridge: None,
    })
}

pub fn lemma2_map(resolution: usize) -> Result<RegionMap> {
    check_resolution(resolution)?;
    let cells = lower_triangle(resolution, -FRAC_PI_2, FRAC_PI_2, |phi1, phi2| {
        angle_region(phi1, phi2).label()
    });
    Ok(RegionMap {
        kind: MapKind::Lemma2,
        resolution,
        theta: None,
        range: (-FRAC_PI_2, FRAC_PI_2),
        cells,
        ridge: None,
    })
}

pub fn ridge_map(theta: f64, resolution: usize, theta_eps: f64) -> Result<RegionMap> {
    let grid = admissible_region_sample_with(theta, resolution, theta_eps)?;
    let cells = grid
        .cells
        .iter()
        .map(|c| Cell {
            i: c.i,
            j: c.j,
            x: c.phi1,
            y: c.phi2,
            label: if c.verdict.admissible {
                "admissible"
            } else {
                "excluded"
            },
        })
        .collect();
    Ok(RegionMap {
        kind: MapKind::Ridge,
        resolution,
        theta: Some(theta),
        range: (-FRAC_PI_2, FRAC_PI_2),
        cells,
        ridge: Some(grid),
    })
}

impl RegionMap {
    /// The labels this map uses, in legend order.
    pub fn labels(&self) -> &'static [&'static str] {
        match self.kind {
            MapKind::Lemma1 | MapKind::Lemma2 => &["i", "ii", "iii", "iv"],
            MapKind::Ridge => &["admissible", "excluded"],
        }
    }

    /// `N × N` mask of cells carrying `label`, indexed `[j][i]`.
    pub fn mask(&self, label: &str) -> Vec<Vec<bool>> {
        let n = self.resolution;
        let mut m = vec![vec![false; n]; n];
        for c in self.cells.iter().filter(|c| c.label == label) {
            m[c.j][c.i] = true;
        }
        m
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match (&self.kind, &self.ridge) {
            (MapKind::Ridge, Some(grid)) => {
                out.push_str("phi1,phi2,admissible,regime,violated\n");
                for c in &grid.cells {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        c.phi1,
                        c.phi2,
                        c.verdict.admissible,
                        c.verdict.regime,
                        c.verdict.violated.join(";")
                    );
                }
            }
            _ => {
                out.push_str(match self.kind {
                    MapKind::Lemma1 => "k1,k2,label\n",
                    _ => "phi1,phi2,label\n",
                });
                for c in &self.cells {
                    let _ = writeln!(out, "{},{},{}", c.x, c.y, c.label);
                }
            }
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const PLOT: f64 = 480.0;
        const LEFT: f64 = 70.0;
        const TOP: f64 = 50.0;
        let n = self.resolution;
        let cell = PLOT / n as f64;
        let mut doc = SvgDocument::new(LEFT + PLOT + 150.0, TOP + PLOT + 60.0);
        doc.rect(
            0.0,
            0.0,
            LEFT + PLOT + 150.0,
            TOP + PLOT + 60.0,
            "#ffffff",
            None,
        );

        let (x_name, y_name) = match self.kind {
            MapKind::Lemma1 => ("k1", "k2"),
            _ => ("phi1", "phi2"),
        };
        let title = match (self.kind, self.theta) {
            (MapKind::Lemma1, _) => "Envelope cases in the (k1, k2) plane".to_string(),
            (MapKind::Lemma2, _) => "Solution cases in the (phi1, phi2) plane".to_string(),
            (MapKind::Ridge, Some(t)) => format!("Admissible ridge angles, theta = {t}"),
            (MapKind::Ridge, None) => "Admissible ridge angles".to_string(),
        };
        doc.text(LEFT + PLOT / 2.0, TOP - 20.0, 16.0, "middle", &title);

        // One path per label; horizontal runs of equal labels become one rectangle.
        let mut grid: Vec<Vec<Option<&str>>> = vec![vec![None; n]; n];
        for c in &self.cells {
            grid[c.j][c.i] = Some(c.label);
        }
        for (k, &label) in self.labels().iter().enumerate() {
            let mut d = String::new();
            for (j, row) in grid.iter().enumerate() {
                let y = TOP + (n - 1 - j) as f64 * cell;
                let mut i = 0;
                while i < n {
                    if row[i] == Some(label) {
                        let start = i;
                        while i < n && row[i] == Some(label) {
                            i += 1;
                        }
                        push_rect(
                            &mut d,
                            LEFT + start as f64 * cell,
                            y,
                            (i - start) as f64 * cell,
                            cell,
                        );
                    } else {
                        i += 1;
                    }
                }
            }
            if !d.is_empty() {
                doc.path(&d, self.color(k), Some(label));
            }
        }

        doc.rect(LEFT, TOP, PLOT, PLOT, "none", Some("#000000"));
        doc.line(LEFT, TOP + PLOT, LEFT + PLOT, TOP, "#555555");
        let (lo, hi) = self.range;
        let fmt_end = |v: f64| match self.kind {
            MapKind::Lemma1 => format!("{v}"),
            _ => (if v < 0.0 { "-pi/2" } else { "pi/2" }).to_string(),
        };
        doc.text(LEFT, TOP + PLOT + 18.0, 12.0, "middle", &fmt_end(lo));
        doc.text(LEFT + PLOT, TOP + PLOT + 18.0, 12.0, "middle", &fmt_end(hi));
        doc.text(LEFT - 6.0, TOP + PLOT, 12.0, "end", &fmt_end(lo));
        doc.text(LEFT - 6.0, TOP + 12.0, 12.0, "end", &fmt_end(hi));
        doc.text(LEFT + PLOT / 2.0, TOP + PLOT + 40.0, 14.0, "middle", x_name);
        doc.text(LEFT - 40.0, TOP + PLOT / 2.0, 14.0, "middle", y_name);

        for (k, &label) in self.labels().iter().enumerate() {
            let y = TOP + 10.0 + 24.0 * k as f64;
            doc.rect(
                LEFT + PLOT + 20.0,
                y,
                16.0,
                16.0,
                self.color(k),
                Some("#000000"),
            );
            doc.text(LEFT + PLOT + 44.0, y + 13.0, 13.0, "start", label);
        }
        doc.finish()
    }

    fn color(&self, k: usize) -> &'static str {
        match self.kind {
            MapKind::Ridge => ["#d3d3d3", "#ffffff"][k],
            _ => ["#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc"][k],
        }
    }
}

/// Number of 8-connected components of `true` cells.
pub fn count_components(mask: &[Vec<bool>]) -> usize {
    let rows = mask.len();
    let mut seen: Vec<Vec<bool>> = mask.iter().map(|r| vec![false; r.len()]).collect();
    let mut count = 0;
    for j in 0..rows {
        for i in 0..mask[j].len() {
            if !mask[j][i] || seen[j][i] {
                continue;
            }
            count += 1;
            seen[j][i] = true;
            let mut stack = vec![(j, i)];
            while let Some((y, x)) = stack.pop() {
                for dy in -1isize..=1 {
                    for dx in -1isize..=1 {
                        let (ny, nx) = (y as isize + dy, x as isize + dx);
                        if ny < 0 || nx < 0 || ny as usize >= rows {
                            continue;
                        }
                        let (ny, nx) = (ny as usize, nx as usize);
                        if nx < mask[ny].len() && mask[ny][nx] && !seen[ny][nx] {
                            seen[ny][nx] = true;
                            stack.push((ny, nx));
                        }
                    }
                }
            }
        }
    }
    count
}

/// Cell area of an `N × N` grid over `[-π/2, π/2]²`.
pub fn angle_cell_area(n: usize) -> f64 {
    (PI / n as f64).powi(2)
}
