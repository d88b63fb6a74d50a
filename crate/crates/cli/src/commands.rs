//! Command-line surface. Every command reads one document and writes one
//! document or report.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use toric_towers::lattice::rational::Q;
use toric_towers::polytope::{
    divisor_polytope, normalized_volume, relative_degree_on_p, relative_volume_on_p,
    LatticePolytope, ProjectiveDivisorData,
};
use toric_towers::report::{CheckReport, CheckViolation};
use toric_towers::toric::ToricDivisor;
use toric_towers::tower::{
    base_change_to_curve, build_model_with_limits, lc_place_transfer_check_with_limits,
    local_model_at, projective_model, CurveGermData, LocalModelDescriptor,
};
use toric_towers::{BigInt, Cone, Fan, LatticeVector, Limits};

use crate::document::{emit_tower, parse_document, parse_tower, DegreeDocument, VolumeDocument};
use crate::error::{exit, CliError};
use crate::random::random_tower;
use crate::report::{vector_strings, Report};
use crate::verify::{check_model, run_verify, Suite, VerifyParams};

#[derive(Debug, Parser)]
#[command(
    name = "toric-towers",
    version,
    about = "Exact combinatorics of special toric towers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input document; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest lattice rank a command may build.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_dim: usize,

    /// Largest number of rays in any level fan.
    #[arg(long, global = true, default_value_t = 500)]
    pub max_rays: usize,

    /// Record wall-clock time in the report (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build every level of a tower and check it.
    Build,
    /// Print the level fans.
    Fan {
        /// Only this level (1-based).
        #[arg(long)]
        level: Option<usize>,
    },
    /// The projective model over the base and the lattice identification.
    MapToProj,
    /// Base change to a curve germ; writes a tower document.
    BaseChange {
        /// Vanishing orders c_1,...,c_p of the base coordinates.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u64>,
        /// The germ's point maps into the torus (all orders must be 0).
        #[arg(long)]
        off_boundary: bool,
    },
    /// lc-place transfer check on rays and sampled vectors of the top level.
    LcCheck {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Local model of the orbits of a level.
    LocalModel {
        /// Level (at least 2); the top level when absent.
        #[arg(long)]
        level: Option<usize>,
        /// A cone as semicolon-separated generators, e.g. "1,0;1,2"; every
        /// cone of the level when absent.
        #[arg(long, allow_hyphen_values = true)]
        cone: Option<String>,
    },
    /// Vertices and normalized volume of a polytope or of a divisor on P^n.
    Volume,
    /// Relative degree and volume on a projective-space fibre.
    Degree,
    /// A seeded random tower; writes a tower document.
    Random {
        #[arg(long)]
        base_dim: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 3)]
        max_exponent: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled vectors per tower in the lc suite.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Random cases per randomized check.
        #[arg(long)]
        cases: Option<usize>,
    },
}

/// Runs a parsed command; `argv` (without the program name) is echoed in the
/// report. Returns the exit code.
pub fn execute(cli: Cli, argv: Vec<String>) -> Result<i32, CliError> {
    let start = Instant::now();
    let limits = Limits {
        max_dim: cli.max_dim,
        max_rays: cli.max_rays,
    };
    let read_input = || -> Result<String, CliError> {
        let mut text = String::new();
        match &cli.input {
            Some(path) => text = std::fs::read_to_string(path)?,
            None => {
                std::io::stdin().read_to_string(&mut text)?;
            }
        }
        Ok(text)
    };

    let report = match &cli.command {
        Command::BaseChange {
            orders,
            off_boundary,
        } => {
            let spec = parse_tower(&read_input()?)?;
            let germ = CurveGermData::from_u64s(orders, !off_boundary)?;
            write_output(
                &cli.output,
                &emit_tower(&base_change_to_curve(&spec, &germ)?),
            )?;
            return Ok(exit::OK);
        }
        Command::Random {
            base_dim,
            levels,
            max_exponent,
            seed,
        } => {
            if *base_dim == 0 || *levels == 0 || *max_exponent == 0 {
                return Err(CliError::Usage(
                    "--base-dim, --levels and --max-exponent must be at least 1".into(),
                ));
            }
            write_output(
                &cli.output,
                &emit_tower(&random_tower(*base_dim, *levels, *max_exponent, *seed)),
            )?;
            return Ok(exit::OK);
        }
        Command::Build => {
            let spec = parse_tower(&read_input()?)?;
            let model = build_model_with_limits(&spec, &limits)?;
            let levels: Vec<Value> = model
                .levels()
                .iter()
                .map(|l| {
                    json!({
                        "index": l.index,
                        "fan": fan_json(&l.fan),
                    })
                })
                .collect();
            Report::new(argv, None)
                .with_checks(check_model(&model, &limits)?)
                .with_result(json!({ "levels": levels }))
        }
        Command::Fan { level } => {
            let spec = parse_tower(&read_input()?)?;
            let model = build_model_with_limits(&spec, &limits)?;
            let chosen = match level {
                Some(i) => vec![model.level(*i)?],
                None => model.levels().iter().collect(),
            };
            let levels: Vec<Value> = chosen
                .iter()
                .map(|l| json!({ "index": l.index, "fan": fan_json(&l.fan) }))
                .collect();
            Report::new(argv, None).with_result(json!({ "levels": levels }))
        }
        Command::MapToProj => {
            let spec = parse_tower(&read_input()?)?;
            let model = build_model_with_limits(&spec, &limits)?;
            let proj = projective_model(&spec)?;
            let mut checks = CheckReport::default();
            for r in model.top().fan.rays() {
                let image = proj.identification.apply(r)?;
                let inside = proj.fan.support_contains(&image)?;
                checks.record(inside, || {
                    CheckViolation::new(
                        "support-inclusion",
                        "ray of V_d outside the model's support",
                    )
                    .with_witness(r.clone())
                });
            }
            let identification: Vec<Vec<String>> = (0..proj.identification.rows())
                .map(|i| vector_strings(&proj.identification.row(i)))
                .collect();
            Report::new(argv, None)
                .with_checks(checks)
                .with_result(json!({
                    "fan": fan_json(&proj.fan),
                    "identification": identification,
                    "boundary": divisor_json(&proj.boundary),
                }))
        }
        Command::LcCheck { samples, seed } => {
            let spec = parse_tower(&read_input()?)?;
            let checks = lc_place_transfer_check_with_limits(&spec, *samples, *seed, &limits)?;
            Report::new(argv, Some(*seed)).with_checks(checks)
        }
        Command::LocalModel { level, cone } => {
            let spec = parse_tower(&read_input()?)?;
            let model = build_model_with_limits(&spec, &limits)?;
            let level = level.unwrap_or(spec.levels());
            let fan = &model.level(level)?.fan;
            let cones = match cone {
                Some(text) => vec![parse_cone(text, fan.ambient_dim())?],
                None => fan.cones(),
            };
            let mut entries = Vec::new();
            for c in &cones {
                let descriptor = local_model_at(&model, level, c)?;
                entries.push(json!({
                    "cone": c.generators().iter().map(vector_strings).collect::<Vec<_>>(),
                    "model": descriptor_json(&descriptor),
                }));
            }
            Report::new(argv, None).with_result(json!({ "level": level, "orbits": entries }))
        }
        Command::Volume => {
            let doc: VolumeDocument = parse_document(&read_input()?)?;
            let polytope = match doc {
                VolumeDocument::Points {
                    ambient_dim,
                    points,
                } => LatticePolytope::from_points(
                    ambient_dim,
                    points
                        .into_iter()
                        .map(|p| p.into_iter().map(|x| x.0).collect())
                        .collect(),
                )?,
                VolumeDocument::ProjectiveDivisor {
                    projective_space,
                    coefficients,
                } => {
                    limits.check_dim(projective_space)?;
                    let fan = Fan::projective_space(projective_space);
                    let rays = projective_rays(projective_space);
                    if coefficients.len() != rays.len() {
                        return Err(CliError::Schema(format!(
                            "a divisor on P^{projective_space} needs {} coefficients, found {}",
                            rays.len(),
                            coefficients.len()
                        )));
                    }
                    let divisor = ToricDivisor::from_pairs(
                        &fan,
                        rays.into_iter().zip(coefficients.into_iter().map(|c| c.0)),
                    )?;
                    divisor_polytope(&fan, &divisor)?
                }
            };
            let vertices: Vec<Vec<String>> = polytope
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect();
            Report::new(argv, None).with_result(json!({
                "vertices": vertices,
                "normalized_volume": normalized_volume(&polytope).to_string(),
            }))
        }
        Command::Degree => {
            let doc: DegreeDocument = parse_document(&read_input()?)?;
            let data = ProjectiveDivisorData::new(
                doc.fiber_dim,
                doc.horizontal.into_iter().map(|x| x.0).collect(),
                doc.vertical.into_iter().map(|x| x.0).collect(),
                doc.polarization.0,
            )?;
            Report::new(argv, None).with_result(json!({
                "relative_degree": relative_degree_on_p(&data).to_string(),
                "relative_volume": relative_volume_on_p(&data).to_string(),
            }))
        }
        Command::Verify {
            suite,
            seed,
            samples,
            cases,
        } => {
            let params = VerifyParams {
                cases: *cases,
                samples: *samples,
                limits,
            };
            let mut report = Report::new(argv, Some(*seed));
            report.absorb(run_verify(*suite, &params, *seed));
            report
        }
    };
    let mut report = report;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    write_output(&cli.output, &report.to_json())?;
    Ok(report.status.exit_code())
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Rays of `P^n` in the order `e_1, ..., e_n, -(e_1 + ... + e_n)`.
fn projective_rays(n: usize) -> Vec<LatticeVector> {
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    rays.push(LatticeVector::new(vec![BigInt::from(-1); n]));
    rays
}

fn parse_cone(text: &str, dim: usize) -> Result<Cone, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "cannot read cone {text:?}; expected e.g. \"1,0;1,2\""
        ))
    };
    let mut gens = Vec::new();
    for part in text.split(';').filter(|s| !s.trim().is_empty()) {
        let entries = part
            .split(',')
            .map(|x| x.trim().parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        gens.push(LatticeVector::new(entries));
    }
    Ok(Cone::from_vectors(dim, &gens)?)
}

/// Rays as decimal strings; maximal cones as indices into the ray list.
fn fan_json(fan: &Fan) -> Value {
    let rays = fan.rays();
    let cones: Vec<Vec<usize>> = fan
        .maximal_cones()
        .iter()
        .map(|c| {
            c.generators()
                .iter()
                .map(|g| {
                    rays.iter()
                        .position(|r| r == g)
                        .expect("generator is a ray")
                })
                .collect()
        })
        .collect();
    json!({
        "dim": fan.ambient_dim(),
        "rays": rays.iter().map(vector_strings).collect::<Vec<_>>(),
        "maximal_cones": cones,
    })
}

fn divisor_json(d: &ToricDivisor) -> Value {
    let entries: Vec<Value> = d
        .coefficients()
        .iter()
        .map(|(ray, c): (&LatticeVector, &Q)| json!({ "ray": vector_strings(ray), "coefficient": c.to_string() }))
        .collect();
    Value::Array(entries)
}

fn descriptor_json(d: &LocalModelDescriptor) -> Value {
    match d {
        LocalModelDescriptor::SmoothPlain => json!({ "kind": "smooth_plain" }),
        LocalModelDescriptor::SmoothOnSection => json!({ "kind": "smooth_on_section" }),
        LocalModelDescriptor::Node { lambda } => json!({
            "kind": "node",
            "lambda": vector_strings(lambda.exponents()),
        }),
    }
}
