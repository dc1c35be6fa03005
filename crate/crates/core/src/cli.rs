//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for invalid input or parameters, 2 when a
//! certificate does not pass. Failures print the violated invariant's name
//! on stderr.

use std::ffi::OsString;
use std::f64::consts::FRAC_PI_6;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{certify, run_approximation, ApproximationConfig};
use crate::error::Error;
use crate::generators::{cap, complete_selfdual, octant, random_selfdual_polytope};
use crate::io::{parse_shape, shape_to_json, step_log, to_json, Shape};
use crate::metrics::{diameter, is_constant_width, self_duality_residual};
use crate::render::{render_svg, Projection};
use crate::sphere::UnitVector;

#[derive(Parser, Debug)]
#[command(name = "sphere-cw", version, about = "Convex bodies of constant width on the sphere")]
pub struct Cli {
    /// Self-duality / width tolerance in radians.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Octant,
    Cap,
    Completion,
    RandomPolytope,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProjectionArg {
    Orthographic,
    Stereographic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated body.
    Generate {
        kind: Kind,
        /// Cap radius; for `completion`, the radius of the seed cap.
        #[arg(long)]
        radius: Option<f64>,
        /// Cap center as `x,y,z`.
        #[arg(long, default_value = "0,0,1")]
        center: String,
        /// Seed body for `completion` (overrides --radius).
        #[arg(long)]
        from: Option<PathBuf>,
        /// Target vertex count for `random-polytope`.
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the polar body.
    Dual {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print thickness, diameter, width range and self-duality residual.
    Metrics { input: PathBuf },
    /// Approximate a body of constant width pi/2 by a polytope.
    Approximate {
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Step log, one JSON record per line.
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_rounds: usize,
    },
    /// Check a polytope against the body it approximates.
    Certify {
        original: PathBuf,
        result: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Draw one or more bodies as SVG.
    Render {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "orthographic")]
        projection: ProjectionArg,
        /// View direction as `x,y,z`.
        #[arg(long, default_value = "0,0,1")]
        view: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: exit code, invariant name, message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub name: String,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CertificationFailed(_) | Error::BudgetExhausted { .. } => 2,
            _ => 1,
        };
        Failure { code, name: e.name().to_string(), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, name: "Io".into(), message: e.to_string() }
    }
}

#[derive(Serialize)]
struct MetricsOutput {
    thickness: f64,
    diameter: f64,
    width_min: f64,
    width_max: f64,
    self_duality_residual: f64,
}

fn parse_vector(s: &str) -> Result<UnitVector, Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure { code: 1, name: "InvalidConfig".into(), message: format!("bad vector {s:?}: {e}") })?;
    if parts.len() != 3 {
        return Err(Failure { code: 1, name: "InvalidConfig".into(), message: format!("vector {s:?} needs 3 components") });
    }
    Ok(UnitVector::new(parts[0], parts[1], parts[2])?)
}

fn read_shape(path: &Path) -> Result<Shape, Failure> {
    let shape = parse_shape(&fs::read_to_string(path)?)?;
    shape.validate()?;
    Ok(shape)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn config(epsilon: f64, tol: f64, max_rounds: usize) -> Result<ApproximationConfig, Failure> {
    let cfg = ApproximationConfig { epsilon, self_dual_tol: tol, max_rounds, ..Default::default() };
    cfg.validate()?;
    Ok(cfg)
}

/// Runs a parsed command.
pub fn execute(cli: Cli) -> Result<(), Failure> {
    let tol = cli.tol;
    match cli.command {
        Command::Generate { kind, radius, center, from, n, out } => {
            let shape = match kind {
                Kind::Octant => Shape::Polytope(octant()),
                Kind::Cap => {
                    let r = radius.ok_or_else(|| Failure {
                        code: 1,
                        name: "InvalidConfig".into(),
                        message: "cap needs --radius".into(),
                    })?;
                    Shape::Body(cap(parse_vector(&center)?, r)?)
                }
                Kind::Completion => {
                    let seed = match from {
                        Some(p) => read_shape(&p)?.to_body()?,
                        None => cap(parse_vector(&center)?, radius.unwrap_or(FRAC_PI_6))?,
                    };
                    let done = complete_selfdual(&seed, tol, cli.seed)?;
                    eprintln!("completion: {} insertions, complete = {}", done.insertions, done.complete);
                    Shape::Body(done.body)
                }
                Kind::RandomPolytope => Shape::Polytope(random_selfdual_polytope(n, cli.seed)?),
            };
            let body = shape.to_body()?;
            eprintln!(
                "generated {} pieces, diameter {:.17}",
                body.len(),
                diameter(&body)
            );
            emit(out.as_deref(), &shape_to_json(&shape))
        }
        Command::Dual { input, out } => {
            let dual = read_shape(&input)?.polar_dual()?;
            emit(out.as_deref(), &shape_to_json(&dual))
        }
        Command::Metrics { input } => {
            let body = read_shape(&input)?.to_body()?;
            let report = is_constant_width(&body, std::f64::consts::FRAC_PI_2, tol)?;
            let m = MetricsOutput {
                thickness: report.thickness,
                diameter: report.diameter,
                width_min: report.width_min,
                width_max: report.width_max,
                self_duality_residual: self_duality_residual(&body)?,
            };
            println!("{}", to_json(&m));
            Ok(())
        }
        Command::Approximate { input, epsilon, out, cert, log, max_rounds } => {
            let body = read_shape(&input)?.to_body()?;
            let cfg = config(epsilon, tol, max_rounds)?;
            let run = run_approximation(&body, &cfg)?;
            if run.exhausted {
                // keep the partial result for inspection
                if let Some(p) = &log {
                    fs::write(p, step_log(&run.steps))?;
                }
                if let Some(p) = &out {
                    fs::write(p, shape_to_json(&Shape::Body(run.body.clone())))?;
                }
            }
            let a = run.finish(&body, &cfg)?;
            if let Some(p) = log {
                fs::write(p, step_log(&a.steps))?;
            }
            if let Some(p) = cert {
                fs::write(p, to_json(&a.certificate))?;
            }
            eprintln!(
                "{} vertices, {} steps, {} rounds, hausdorff {:.6e}",
                a.polytope.len(),
                a.certificate.steps,
                a.certificate.rounds,
                a.certificate.hausdorff_bound
            );
            emit(out.as_deref(), &shape_to_json(&Shape::Polytope(a.polytope)))
        }
        Command::Certify { original, result, epsilon, cert } => {
            let original = read_shape(&original)?.to_body()?;
            let result = match read_shape(&result)? {
                Shape::Polytope(p) => p,
                Shape::Body(b) => b.to_polytope()?,
            };
            let c = certify(&original, &result, &config(epsilon, tol, 1)?)?;
            let text = to_json(&c);
            match cert {
                Some(p) => fs::write(p, text)?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::Render { inputs, projection, view, out } => {
            let view = parse_vector(&view)?;
            let bodies = inputs
                .iter()
                .map(|p| read_shape(p).and_then(|s| Ok(s.to_body()?)))
                .collect::<Result<Vec<_>, _>>()?;
            let projection = match projection {
                ProjectionArg::Orthographic => Projection::Orthographic,
                ProjectionArg::Stereographic => Projection::Stereographic,
            };
            let svg = render_svg(&bodies, projection, view)?;
            match out {
                Some(p) => fs::write(p, svg)?,
                None => print!("{svg}"),
            }
            Ok(())
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}: {}", f.name, f.message);
            f.code
        }
    }
}
