//! `galpoint`: Galois points of plane curves and monodromy of their dual
//! projections.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 numerical failure.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galpoint::poly::parse::{parse_hompoly, parse_point};
use galpoint::{Error, MonodromyOptions, PlaneCurve, ProjectivePoint};

#[derive(Parser)]
#[command(
    name = "galpoint",
    version,
    about = "Galois points of plane curves and dual-curve monodromy groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, singularities, flexes, genus, and dual-degree estimate.
    Analyze(CurveArgs),
    /// Dual curve with exact certification.
    Dual(CurveArgs),
    /// Extendable Galois points with theorem-level predictions.
    GaloisPoints(GaloisArgs),
    /// Monodromy of the projection from a point.
    Monodromy(MonodromyArgs),
    /// Check a cuspless cubic against the dual-curve structure theorems.
    VerifyCubic(CurveArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Homogeneous polynomial in X, Y, Z, e.g. "X^3 + Y^3 + Z^3".
    #[arg(long, conflicts_with = "file")]
    curve: Option<String>,
    /// Read the curve polynomial from a file instead.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Seed for all randomized choices (base points, perturbations).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Starting precision for the numerical pipeline.
    #[arg(long, value_enum, default_value_t = Precision::Double)]
    precision: Precision,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the output to a file as well as stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GaloisArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Extra candidate points "a:b:c" for the outer search.
    #[arg(long = "point")]
    points: Vec<String>,
    /// Confirm predictions by running dual-curve monodromy.
    #[arg(long)]
    confirm: bool,
}

#[derive(Args)]
struct MonodromyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Projection center "a:b:c".
    #[arg(long)]
    point: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    /// 53-bit hardware doubles.
    Double,
    /// 212-bit software floats.
    #[value(name = "212")]
    P212,
    /// 848-bit software floats.
    #[value(name = "848")]
    P848,
}

impl Precision {
    fn bits(self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::P212 => 212,
            Precision::P848 => 848,
        }
    }
}

fn load_curve_source(common: &CommonArgs) -> Result<String, Error> {
    match (&common.curve, &common.file) {
        (Some(expr), None) => Ok(expr.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("cannot read {}: {e}", path.display()),
            }),
        _ => Err(Error::Parse {
            pos: 0,
            msg: "exactly one of --curve and --file is required".into(),
        }),
    }
}

fn load_curve(common: &CommonArgs) -> Result<PlaneCurve, Error> {
    PlaneCurve::new(parse_hompoly(&load_curve_source(common)?)?)
}

fn run(cli: &Cli) -> Result<commands::Outcome, Error> {
    let common = match &cli.command {
        Command::Analyze(a) | Command::Dual(a) | Command::VerifyCubic(a) => &a.common,
        Command::GaloisPoints(a) => &a.common,
        Command::Monodromy(a) => &a.common,
    };
    let opts = MonodromyOptions {
        seed: common.seed,
        min_prec: common.precision.bits(),
    };
    match &cli.command {
        Command::Analyze(a) => commands::cmd_analyze(&load_curve(&a.common)?, &opts),
        Command::Dual(a) => commands::cmd_dual(&load_curve(&a.common)?, &opts),
        Command::GaloisPoints(a) => {
            let extras: Vec<ProjectivePoint> = a
                .points
                .iter()
                .map(|s| parse_point(s).map(ProjectivePoint::from_exact))
                .collect::<Result<_, _>>()?;
            commands::cmd_galois_points(&load_curve(&a.common)?, &extras, a.confirm, &opts)
        }
        Command::Monodromy(a) => {
            commands::cmd_monodromy(&load_curve_source(&a.common)?, &a.point, &opts)
        }
        Command::VerifyCubic(a) => commands::cmd_verify_cubic(&load_curve(&a.common)?, &opts),
    }
}

/// Exit-code policy: malformed or out-of-scope input is 2, breakdowns of the
/// numerical pipeline are 3, and a clean run whose checks fail is 1.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::NotHomogeneous { .. }
        | Error::Reducible { .. }
        | Error::Degenerate(_)
        | Error::SingularCenter(_)
        | Error::UnsupportedMultiplicity(_)
        | Error::OffLocus(_)
        | Error::Unsupported(_) => 2,
        Error::Numerical(_) | Error::Validation(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let common = match &cli.command {
                Command::Analyze(a) | Command::Dual(a) | Command::VerifyCubic(a) => &a.common,
                Command::GaloisPoints(a) => &a.common,
                Command::Monodromy(a) => &a.common,
            };
            let rendered = if common.json {
                let mut s = serde_json::to_string_pretty(&outcome.json)
                    .expect("report serialization cannot fail");
                s.push('\n');
                s
            } else {
                outcome.text.clone()
            };
            print!("{rendered}");
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
