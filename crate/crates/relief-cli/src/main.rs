//! relief: textured terrain meshes from elevation grids, and quadric
//! decimation of the result.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 I/O or parse
//! error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "relief",
    version,
    about = "Terrain meshing and simplification pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a textured terrain mesh from an elevation grid
    Generate(GenerateArgs),
    /// Reduce a mesh by quadric edge collapse
    Simplify(SimplifyArgs),
    /// Rewrite a mesh in the format of the output extension
    Convert(ConvertArgs),
    /// Report mesh size and element counts
    Stats(StatsArgs),
    /// Generate, keep a VRML intermediate, simplify, and export OBJ
    Pipeline(PipelineArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Diagonal {
    /// Always split cells along the NW-SE diagonal
    Fixed,
    /// Split along whichever diagonal is shorter in 3D
    Shortest,
}

#[derive(Args)]
struct GenerateArgs {
    /// Elevation grid (.asc)
    #[arg(long)]
    dem: PathBuf,
    /// Image to drape over the terrain (.ppm)
    #[arg(long)]
    texture: Option<PathBuf>,
    /// Multiplier applied to every elevation sample
    #[arg(long, default_value_t = 1.0)]
    z_scale: f64,
    #[arg(long, value_enum, default_value_t = Diagonal::Fixed)]
    diagonal: Diagonal,
    /// Output mesh (.wrl or .obj)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TargetArgs {
    /// Stop when this many faces remain
    #[arg(long)]
    target_faces: Option<usize>,
    /// Stop at this fraction of the input face count, in (0, 1]
    #[arg(long)]
    target_ratio: Option<f64>,
}

#[derive(Args)]
struct TuningArgs {
    /// Reject collapses leaving a triangle below this shape quality
    #[arg(long, default_value_t = 0.3)]
    quality: f64,
    /// Penalty weight holding boundary vertices on the rim
    #[arg(long, default_value_t = 1000.0)]
    boundary_weight: f64,
    /// Let boundary vertices move freely
    #[arg(long)]
    no_preserve_boundary: bool,
    /// Allow collapses that flip face normals
    #[arg(long)]
    no_preserve_normal: bool,
    /// Strength of the flat-region regularization term
    #[arg(long, default_value_t = 0.001)]
    planar_weight: f64,
}

#[derive(Args)]
struct SimplifyArgs {
    /// Input mesh (.wrl or .obj)
    #[arg(long, value_name = "PATH")]
    r#in: PathBuf,
    /// Output mesh (.wrl or .obj)
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    tuning: TuningArgs,
    /// Write a JSON before/after report here
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Input mesh (.wrl or .obj)
    #[arg(long, value_name = "PATH")]
    r#in: PathBuf,
    /// Output mesh (.wrl or .obj)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    /// Mesh to measure (.wrl or .obj)
    #[arg(long, value_name = "PATH")]
    r#in: PathBuf,
    /// Earlier version of the mesh to compare against
    #[arg(long)]
    baseline: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// Elevation grid (.asc)
    #[arg(long)]
    dem: PathBuf,
    /// Image to drape over the terrain (.ppm)
    #[arg(long)]
    texture: Option<PathBuf>,
    /// Multiplier applied to every elevation sample
    #[arg(long, default_value_t = 1.0)]
    z_scale: f64,
    #[arg(long, value_enum, default_value_t = Diagonal::Fixed)]
    diagonal: Diagonal,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    tuning: TuningArgs,
    /// Final OBJ path; the VRML intermediate lands beside it as .wrl
    #[arg(long)]
    out: PathBuf,
    /// Write a JSON before/after report here
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Failures carry their exit code: usage and parameter problems exit 1,
/// anything that went wrong reading, parsing, or writing data exits 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Generate(args) => commands::generate(args),
        Command::Simplify(args) => commands::simplify(args),
        Command::Convert(args) => commands::convert(args),
        Command::Stats(args) => commands::stats(args),
        Command::Pipeline(args) => commands::pipeline(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
