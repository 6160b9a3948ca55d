mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "grafting-lab", version, about = "Grafting rays, Teichmüller rays and certified length bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact geodesic lengths against broken-arc estimates for a catalog.
    Length(LengthArgs),
    /// Length, twist and distance bounds along the grafting ray.
    GraftRay(RayArgs),
    /// Length, twist and distance bounds along the model Teichmüller ray.
    TeichRay(RayArgs),
    /// Projective limit of catalog lengths along a ray.
    Converge(ConvergeArgs),
    /// Product-region distance between the two rays at each t.
    Distance(RayArgs),
    /// Bounded-distance certificate between the two rays.
    Certify(RayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Graft,
    Teich,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Surface JSON file.
    #[arg(long)]
    pub surface: PathBuf,
    /// Curve catalog JSON file.
    #[arg(long)]
    pub catalog: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct LengthArgs {
    #[command(flatten)]
    pub io: Io,
    /// Calibration bound on pants-curve lengths.
    #[arg(long = "m", default_value_t = grafting_lab::curves::DEFAULT_M)]
    pub m: f64,
}

#[derive(Args, Debug, Clone)]
pub struct Grid {
    /// Weighted multicurve, e.g. "g1:1.0,g2:0.5".
    #[arg(long)]
    pub lam: String,
    #[arg(long, default_value_t = 1e2)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1e6)]
    pub t_max: f64,
    /// Number of log-spaced grid points.
    #[arg(long, default_value_t = 60)]
    pub steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Overrides {
    /// Sector half-angle; computed from the collar when absent.
    #[arg(long)]
    pub theta0: Option<f64>,
    /// Thinness threshold.
    #[arg(long, default_value_t = grafting_lab::boundary::DEFAULT_EPS0)]
    pub eps0: f64,
    #[arg(long, default_value_t = grafting_lab::graft::DEFAULT_T0)]
    pub t0: f64,
    #[arg(long, default_value_t = grafting_lab::boundary::DEFAULT_SLACK)]
    pub slack: f64,
    /// Calibration bound on pants-curve lengths.
    #[arg(long = "m", default_value_t = grafting_lab::curves::DEFAULT_M)]
    pub m: f64,
    /// Twist bound for the compactness check.
    #[arg(long = "t-bound", default_value_t = grafting_lab::boundary::DEFAULT_COMPACT_T)]
    pub t_bound: f64,
    /// Certificate bound D.
    #[arg(long, default_value_t = grafting_lab::boundary::DEFAULT_BOUND)]
    pub bound: f64,
    #[arg(long, default_value_t = grafting_lab::teich::DEFAULT_KAPPA)]
    pub kappa: f64,
    /// Model normalization; matched to the grafting ray when absent.
    #[arg(long)]
    pub k0: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct RayArgs {
    #[command(flatten)]
    pub io: Io,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub over: Overrides,
}

#[derive(Args, Debug, Clone)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub ray: RayArgs,
    #[arg(long, value_enum, default_value = "graft")]
    pub family: Family,
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Done,
    Inconclusive(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Length(a) => commands::length(a),
        Command::GraftRay(a) => commands::graft_ray_sweep(a),
        Command::TeichRay(a) => commands::teich_ray(a),
        Command::Converge(a) => commands::converge(a),
        Command::Distance(a) => commands::distance(a),
        Command::Certify(a) => commands::certify(a),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Inconclusive(why)) => {
            eprintln!("inconclusive: {why}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
