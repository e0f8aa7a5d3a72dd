//! `newton-resist`: solve, classify, cross-check and draw.
//!
//! Every command prints one JSON envelope on stdout (see `schemas/`). Exit
//! status is 0 on success, 2 for invalid input and 1 for internal failures.

mod body;
mod output;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use newton_resist::oracle::{oracle_pairs, oracle_sampler, GridSpec, NEGATIVE_WEIGHT_TOL};
use newton_resist::region::{count_components, lemma1_map, lemma2_map, ridge_map, RegionMap};
use newton_resist::ridge::{classify_ridge_with, DihedralData, EXCEPTIONAL_TOL};
use newton_resist::solver2d::{solve_angles, WEIGHT_CUTOFF};
use newton_resist::{AngleProblem, Atom, CaseLabel, SlopeProblem};
use serde::Serialize;

use output::Envelope;

const THREADS_VAR: &str = "NEWTON_RESIST_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] newton_resist::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) if e.is_validation() => 2,
            CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "newton-resist",
    version,
    about = "Newton-type least-resistance solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the 2D problem in angle form or slope form.
    Solve2d(ProblemArgs),
    /// Check the necessary condition at a ridge point.
    ClassifyRidge(RidgeArgs),
    /// Write a labeled region map as CSV or SVG.
    RegionMap(RegionArgs),
    /// Compare the solver with the brute-force oracles.
    Oracle(OracleArgs),
    /// Resistance and surface measure of a polygon or polytope.
    Resistance(ResistanceArgs),
}

#[derive(Debug, Args, Serialize)]
struct ProblemArgs {
    /// Endpoint angle; needs --phi1 and --phi2.
    #[arg(long, allow_hyphen_values = true)]
    phi0: Option<f64>,
    /// Upper slope angle.
    #[arg(long, allow_hyphen_values = true)]
    phi1: Option<f64>,
    /// Lower slope angle.
    #[arg(long, allow_hyphen_values = true)]
    phi2: Option<f64>,
    /// Endpoint slope z0/x0; needs --k1 and --k2.
    #[arg(long, allow_hyphen_values = true)]
    k0: Option<f64>,
    /// Upper slope bound.
    #[arg(long, allow_hyphen_values = true)]
    k1: Option<f64>,
    /// Lower slope bound.
    #[arg(long, allow_hyphen_values = true)]
    k2: Option<f64>,
    /// Horizontal extent in slope form; the default is the unit chord.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    /// Read angle flags in degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args, Serialize)]
struct RidgeArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, allow_hyphen_values = true)]
    phi1: f64,
    #[arg(long, allow_hyphen_values = true)]
    phi2: f64,
    /// Treat any theta below this as zero.
    #[arg(long, default_value_t = 0.0)]
    theta_eps: f64,
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Which {
    Lemma1,
    Lemma2,
    Ridge,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args, Serialize)]
struct RegionArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Edge angle, ridge maps only.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    theta_eps: f64,
    #[arg(long, default_value_t = 400)]
    resolution: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args, Serialize)]
struct OracleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    problem: ProblemArgs,
    /// Number of equispaced grid angles on [phi2, phi1].
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    /// Add the solver's atom angles to the grid.
    #[arg(long)]
    inject_solver_atoms: bool,
    /// Also run the profile sampler with this many draws.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Serialize)]
struct ResistanceArgs {
    /// JSON body file.
    #[arg(long)]
    body: PathBuf,
}

/// A validated problem, normalized to the unit chord, with the factor that
/// scales it back to the requested size.
struct Problem {
    angles: AngleProblem,
    slopes: Option<SlopeProblem>,
    scale: f64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn to_radians(v: f64, degrees: bool) -> f64 {
    if degrees {
        v.to_radians()
    } else {
        v
    }
}

impl ProblemArgs {
    fn problem(&self) -> Result<Problem, CliError> {
        let angles = [self.phi0, self.phi1, self.phi2];
        let slopes = [self.k0, self.k1, self.k2];
        let any_angle = angles.iter().any(Option::is_some);
        let any_slope = slopes.iter().any(Option::is_some) || self.x0.is_some();
        match (any_angle, any_slope) {
            (true, true) => Err(usage(
                "use either --phi0/--phi1/--phi2 or --k0/--k1/--k2, not both",
            )),
            (false, false) => Err(usage("give --phi0 --phi1 --phi2 or --k0 --k1 --k2")),
            (true, false) => {
                let [Some(a0), Some(a1), Some(a2)] = angles else {
                    return Err(usage("--phi0, --phi1 and --phi2 are all required"));
                };
                let d = self.degrees;
                Ok(Problem {
                    angles: AngleProblem::new(
                        to_radians(a0, d),
                        to_radians(a1, d),
                        to_radians(a2, d),
                    )?,
                    slopes: None,
                    scale: 1.0,
                })
            }
            (false, true) => {
                let [Some(k0), Some(k1), Some(k2)] = slopes else {
                    return Err(usage("--k0, --k1 and --k2 are all required"));
                };
                if self.degrees {
                    return Err(usage("--degrees applies to angle flags only"));
                }
                let s = SlopeProblem::new(k1, k2, k0, self.x0.unwrap_or(1.0))?;
                let scale = self.x0.map_or(1.0, |x0| x0 / s.x0());
                Ok(Problem {
                    angles: s.to_angles()?,
                    slopes: Some(s),
                    scale,
                })
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct Solve2dResult {
    case: CaseLabel,
    phi0: f64,
    phi1: f64,
    phi2: f64,
    /// Endpoint `(x0, z0)` of the profile.
    endpoint: [f64; 2],
    atoms: Vec<Atom>,
    breakpoints: Vec<[f64; 2]>,
    slopes: Vec<f64>,
    value: f64,
}

fn scaled_atoms(atoms: &[Atom], scale: f64) -> Vec<Atom> {
    atoms
        .iter()
        .map(|a| Atom {
            phi: a.phi,
            weight: a.weight * scale,
        })
        .collect()
}

fn cmd_solve2d(args: ProblemArgs) -> Result<(), CliError> {
    let pr = args.problem()?;
    let s = solve_angles(&pr.angles)?;
    let c = pr.scale;
    let breakpoints: Vec<[f64; 2]> = s
        .function
        .breakpoints()
        .iter()
        .map(|&[x, z]| [x * c, z * c])
        .collect();
    let result = Solve2dResult {
        case: s.case,
        phi0: pr.angles.phi0(),
        phi1: pr.angles.phi1(),
        phi2: pr.angles.phi2(),
        endpoint: *breakpoints.last().expect("at least one segment"),
        atoms: scaled_atoms(s.measure.atoms(), c),
        slopes: s.function.slopes(),
        breakpoints,
        value: s.value * c,
    };
    Envelope::new("solve2d", args, result)
        .tolerance("weight_cutoff", WEIGHT_CUTOFF)
        .print()?;
    Ok(())
}

fn cmd_classify_ridge(args: RidgeArgs) -> Result<(), CliError> {
    let d = args.degrees;
    let data = DihedralData::new(
        to_radians(args.theta, d),
        to_radians(args.phi1, d),
        to_radians(args.phi2, d),
    )?;
    let theta_eps = to_radians(args.theta_eps, d);
    if !(theta_eps.is_finite() && theta_eps >= 0.0) {
        return Err(usage("--theta-eps must be finite and nonnegative"));
    }
    let verdict = classify_ridge_with(&data, theta_eps);
    Envelope::new("classify-ridge", args, verdict)
        .tolerance("exceptional_point", EXCEPTIONAL_TOL)
        .tolerance("theta_eps", theta_eps)
        .print()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct LabelSummary {
    cells: usize,
    components: usize,
}

#[derive(Debug, Serialize)]
struct RegionResult {
    out: PathBuf,
    format: Format,
    resolution: usize,
    cells: usize,
    labels: BTreeMap<&'static str, LabelSummary>,
}

fn cmd_region_map(args: RegionArgs) -> Result<(), CliError> {
    let theta_eps = to_radians(args.theta_eps, args.degrees);
    if !(theta_eps.is_finite() && theta_eps >= 0.0) {
        return Err(usage("--theta-eps must be finite and nonnegative"));
    }
    if args.which != Which::Ridge && args.theta.is_some() {
        return Err(usage("--theta applies to ridge maps only"));
    }
    let map: RegionMap = match args.which {
        Which::Lemma1 => lemma1_map(args.resolution)?,
        Which::Lemma2 => lemma2_map(args.resolution)?,
        Which::Ridge => {
            let theta = args
                .theta
                .ok_or_else(|| usage("--theta is required for ridge maps"))?;
            ridge_map(to_radians(theta, args.degrees), args.resolution, theta_eps)?
        }
    };
    let text = match args.format {
        Format::Csv => map.to_csv(),
        Format::Svg => map.to_svg(),
    };
    let Some(path) = &args.out else {
        print!("{text}");
        return Ok(());
    };
    fs::write(path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    let labels = map
        .labels()
        .iter()
        .map(|&l| {
            let mask = map.mask(l);
            let cells = mask.iter().flatten().filter(|&&b| b).count();
            (
                l,
                LabelSummary {
                    cells,
                    components: count_components(&mask),
                },
            )
        })
        .collect();
    let result = RegionResult {
        out: path.clone(),
        format: args.format,
        resolution: map.resolution,
        cells: map.cells.len(),
        labels,
    };
    let mut env = Envelope::new("region-map", args, result);
    if env.inputs.which == Which::Ridge {
        env = env
            .tolerance("exceptional_point", EXCEPTIONAL_TOL)
            .tolerance("theta_eps", theta_eps);
    }
    env.print()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct SamplerReport {
    samples: usize,
    seed: u64,
    value: f64,
    /// Sampled minimum minus solver value; never below zero up to rounding.
    excess: f64,
}

#[derive(Debug, Serialize)]
struct OracleReport {
    case: CaseLabel,
    solver_value: f64,
    oracle_value: f64,
    gap: f64,
    grid: usize,
    injected: Vec<f64>,
    oracle_atoms: Vec<Atom>,
    sampler: Option<SamplerReport>,
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let pr = args.problem.problem()?;
    let c = pr.scale;
    let s = solve_angles(&pr.angles)?;
    let injected: Vec<f64> = if args.inject_solver_atoms {
        s.measure.atoms().iter().map(|a| a.phi).collect()
    } else {
        Vec::new()
    };
    let grid = GridSpec::with_atoms(args.grid, injected.iter().copied());
    let o = oracle_pairs(&pr.angles, &grid)?;
    let sampler = match args.samples {
        None => None,
        Some(0) => return Err(usage("--samples must be positive")),
        Some(n) => {
            let sp = match pr.slopes {
                Some(sp) => sp,
                None => {
                    let a = &pr.angles;
                    SlopeProblem::normalized(a.phi1().tan(), a.phi2().tan(), a.phi0().tan())?
                }
            };
            let value = oracle_sampler(&sp, n, args.seed)?;
            Some(SamplerReport {
                samples: n,
                seed: args.seed,
                value: value * c,
                excess: (value - s.value) * c,
            })
        }
    };
    let result = OracleReport {
        case: s.case,
        solver_value: s.value * c,
        oracle_value: o.value * c,
        gap: (o.value - s.value).abs() * c,
        grid: args.grid,
        injected,
        oracle_atoms: scaled_atoms(o.measure.atoms(), c),
        sampler,
    };
    Envelope::new("oracle", args, result)
        .tolerance("negative_weight", NEGATIVE_WEIGHT_TOL)
        .tolerance("weight_cutoff", WEIGHT_CUTOFF)
        .print()?;
    Ok(())
}

fn cmd_resistance(args: ResistanceArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.body)
        .map_err(|e| usage(format!("cannot read {}: {e}", args.body.display())))?;
    let result = body::evaluate(&body::parse(&text)?);
    Envelope::new("resistance", args, result)
        .tolerance("balance_3d", newton_resist::measure::BALANCE_TOL_3D)
        .print()?;
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "{THREADS_VAR} must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Solve2d(a) => cmd_solve2d(a),
        Command::ClassifyRidge(a) => cmd_classify_ridge(a),
        Command::RegionMap(a) => cmd_region_map(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Resistance(a) => cmd_resistance(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
