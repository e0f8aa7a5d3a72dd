//! Brute-force minimizers used to check the closed-form solver.
//!
//! [`oracle_pairs`] discretizes the moment problem: the constraint
//! `∫ e_φ dμ = e_{φ₀}` has two scalar equations, so basic feasible solutions
//! have at most two atoms, and enumerating every pair of grid angles (plus
//! singletons) finds the best grid measure exactly.
//!
//! [`oracle_sampler`] draws random admissible concave profiles and reports
//! the smallest resistance seen.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver2d::{AngleProblem, Atom, AtomicMeasure, PiecewiseLinearConcave, SlopeProblem};

/// Weights down to this value are accepted and clamped to zero.
pub const NEGATIVE_WEIGHT_TOL: f64 = -1e-14;

/// Number of linear pieces of each sampled profile.
pub const SAMPLE_SEGMENTS: usize = 32;

const MAX_SAMPLE_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub extra_atoms: Vec<f64>,
}

impl GridSpec {
    pub fn uniform(n: usize) -> Self {
        GridSpec {
            n,
            extra_atoms: Vec::new(),
        }
    }

    pub fn with_atoms(n: usize, extra: impl IntoIterator<Item = f64>) -> Self {
        GridSpec {
            n,
            extra_atoms: extra.into_iter().collect(),
        }
    }

    /// Sorted, deduplicated angles: `n` equispaced nodes covering
    /// `[φ₂, φ₁]` including both ends, plus the injected atoms.
    pub fn angles(&self, p: &AngleProblem) -> Result<Vec<f64>> {
        if self.n < 3 {
            return Err(Error::OutOfRange {
                name: "grid",
                value: self.n as f64,
                range: "[3, inf)",
            });
        }
        let (lo, hi) = (p.phi2(), p.phi1());
        let mut v: Vec<f64> = (0..self.n)
            .map(|k| {
                if k == self.n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (self.n - 1) as f64
                }
            })
            .collect();
        for &a in &self.extra_atoms {
            if !(lo..=hi).contains(&a) {
                return Err(Error::OutOfRange {
                    name: "injected atom",
                    value: a,
                    range: "[phi2, phi1]",
                });
            }
            v.push(a);
        }
        v.sort_by(f64::total_cmp);
        v.dedup();
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub measure: AtomicMeasure,
    pub value: f64,
}

#[derive(Clone, Copy)]
struct Candidate {
    value: f64,
    /// Grid indices, higher angle first; `b == a` for a singleton.
    a: usize,
    b: usize,
    wa: f64,
    wb: f64,
}

impl Candidate {
    fn better(self, other: Self) -> Self {
        match self.value.total_cmp(&other.value) {
            Ordering::Less => self,
            Ordering::Greater => other,
            Ordering::Equal => {
                if (self.a, self.b) <= (other.a, other.b) {
                    self
                } else {
                    other
                }
            }
        }
    }
}

/// Exhaustive search over measures supported on one or two grid angles.
pub fn oracle_pairs(p: &AngleProblem, g: &GridSpec) -> Result<OracleResult> {
    let angles = g.angles(p)?;
    let phi0 = p.phi0();
    let (s0, c0) = phi0.sin_cos();
    // e_φ = (-sin φ, cos φ)
    let trig: Vec<(f64, f64)> = angles.iter().map(|a| a.sin_cos()).collect();
    let cubes: Vec<f64> = trig.iter().map(|&(_, c)| c * c * c).collect();
    let m = angles.len();

    let best_for = |a: usize| -> Option<Candidate> {
        let (sa, ca) = trig[a];
        let mut best: Option<Candidate> = None;
        let mut offer = |c: Candidate| {
            best = Some(match best {
                Some(b) => b.better(c),
                None => c,
            });
        };
        if angles[a] == phi0 {
            offer(Candidate {
                value: cubes[a],
                a,
                b: a,
                wa: 1.0,
                wb: 0.0,
            });
        }
        for b in 0..a {
            let (sb, cb) = trig[b];
            // cross(e_a, e_b) = sin(φ_b - φ_a)
            let det = sb * ca - sa * cb;
            if det == 0.0 {
                continue;
            }
            let mut wa = (sb * c0 - s0 * cb) / det;
            let mut wb = (s0 * ca - sa * c0) / det;
            if wa < NEGATIVE_WEIGHT_TOL || wb < NEGATIVE_WEIGHT_TOL {
                continue;
            }
            wa = wa.max(0.0);
            wb = wb.max(0.0);
            offer(Candidate {
                value: wa * cubes[a] + wb * cubes[b],
                a,
                b,
                wa,
                wb,
            });
        }
        best
    };

    let best = (0..m)
        .into_par_iter()
        .filter_map(best_for)
        .reduce_with(Candidate::better)
        .ok_or_else(|| Error::Internal("no feasible atom pair on the grid".into()))?;

    let mut atoms = vec![Atom {
        phi: angles[best.a],
        weight: best.wa,
    }];
    if best.b != best.a {
        atoms.push(Atom {
            phi: angles[best.b],
            weight: best.wb,
        });
    }
    atoms.retain(|a| a.weight > 0.0);
    Ok(OracleResult {
        measure: AtomicMeasure::new(atoms)?,
        value: best.value,
    })
}

/// Draws one admissible profile with [`SAMPLE_SEGMENTS`] pieces.
///
/// Slopes are sorted decreasing in `[κ₂, κ₁]`; each is snapped to an end of the
/// window with a per-sample probability so that extreme profiles are
/// represented. Widths are Dirichlet(1) scaled to `x₀` and then mixed with
/// the flattest piece (or the steepest) until the mean slope equals `K`.
pub fn sample_profile<R: Rng>(p: &SlopeProblem, rng: &mut R) -> Result<PiecewiseLinearConcave> {
    let (k1, k2, k, x0) = (p.k1(), p.k2(), p.k(), p.x0());
    for _ in 0..MAX_SAMPLE_RETRIES {
        let snap: f64 = rng.random();
        let mut slopes: Vec<f64> = (0..SAMPLE_SEGMENTS)
            .map(|_| {
                if rng.random::<f64>() < snap {
                    if rng.random::<bool>() {
                        k1
                    } else {
                        k2
                    }
                } else {
                    k2 + (k1 - k2) * rng.random::<f64>()
                }
            })
            .collect();
        slopes.sort_by(|a, b| b.total_cmp(a));
        let (first, last) = (slopes[0], slopes[SAMPLE_SEGMENTS - 1]);
        if !(first > k && last < k) {
            continue;
        }
        let mut widths: Vec<f64> = (0..SAMPLE_SEGMENTS)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let total: f64 = widths.iter().sum();
        widths.iter_mut().for_each(|w| *w *= x0 / total);

        let mean = widths.iter().zip(&slopes).map(|(w, s)| w * s).sum::<f64>() / x0;
        // Mix toward the extreme piece on the far side of K: w' = (1-t)w + t·x0·δ.
        let (target, extreme) = if mean > k {
            (SAMPLE_SEGMENTS - 1, last)
        } else {
            (0, first)
        };
        let t = (mean - k) / (mean - extreme);
        widths.iter_mut().for_each(|w| *w *= 1.0 - t);
        widths[target] += t * x0;

        // Merge equal slopes and drop empty pieces.
        let mut ks: Vec<f64> = Vec::with_capacity(SAMPLE_SEGMENTS);
        let mut ws: Vec<f64> = Vec::with_capacity(SAMPLE_SEGMENTS);
        for (&s, &w) in slopes.iter().zip(&widths) {
            if w <= 0.0 {
                continue;
            }
            match ks.last() {
                Some(&prev) if prev == s => *ws.last_mut().expect("paired") += w,
                _ => {
                    ks.push(s);
                    ws.push(w);
                }
            }
        }
        if let Ok(f) = PiecewiseLinearConcave::from_slopes(&ks, &ws) {
            return Ok(f);
        }
    }
    Err(Error::Sampler(format!(
        "no admissible profile after {MAX_SAMPLE_RETRIES} draws (k2 = {k2}, K = {k}, k1 = {k1})"
    )))
}

/// Smallest resistance over `samples` random admissible profiles. The
/// generator is ChaCha8 seeded from `seed`, so results are reproducible.
pub fn oracle_sampler(p: &SlopeProblem, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        best = best.min(sample_profile(p, &mut rng)?.resistance());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn case_one_on_symmetric_grid() {
        let p = AngleProblem::new(0.0, FRAC_PI_4, -FRAC_PI_4).unwrap();
        let r = oracle_pairs(&p, &GridSpec::uniform(5)).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singleton_when_grid_holds_phi0() {
        let phi0 = 2f64.atan();
        let p = AngleProblem::new(phi0, 3f64.atan(), FRAC_PI_4).unwrap();
        let r = oracle_pairs(&p, &GridSpec::with_atoms(3, [phi0])).unwrap();
        assert_eq!(
            r.measure.atoms(),
            &[Atom {
                phi: phi0,
                weight: 1.0
            }]
        );
        assert!((r.value - phi0.cos().powi(3)).abs() < 1e-16);
    }

    #[test]
    fn injected_tangency_atom() {
        let p = AngleProblem::new(0.5f64.atan(), 2f64.atan(), 0.0).unwrap();
        let r = oracle_pairs(&p, &GridSpec::with_atoms(7, [FRAC_PI_4])).unwrap();
        assert!((r.value - 1.5 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn grid_validation() {
        let p = AngleProblem::new(0.0, 0.5, -0.5).unwrap();
        assert!(oracle_pairs(&p, &GridSpec::uniform(2)).is_err());
        assert!(oracle_pairs(&p, &GridSpec::with_atoms(5, [0.7])).is_err());
        let g = GridSpec::uniform(5).angles(&p).unwrap();
        assert_eq!(g.first(), Some(&-0.5));
        assert_eq!(g.last(), Some(&0.5));
    }

    #[test]
    fn sampled_profiles_are_admissible() {
        let p = SlopeProblem::normalized(2.0, -1.5, 0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let f = sample_profile(&p, &mut rng).unwrap();
            let [x, z] = f.end();
            assert!((x - p.x0()).abs() < 1e-12 && (z - p.z0()).abs() < 1e-12);
            for k in f.slopes() {
                assert!((-1.5 - 1e-9..=2.0 + 1e-9).contains(&k));
            }
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let p = SlopeProblem::normalized(1.0, -1.0, 0.0).unwrap();
        let a = oracle_sampler(&p, 500, 7).unwrap();
        let b = oracle_sampler(&p, 500, 7).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
