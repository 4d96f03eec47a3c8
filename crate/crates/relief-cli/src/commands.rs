//! The five subcommands, on top of the relief library.

use std::fs;
use std::path::{Path, PathBuf};

use relief::formats::{read_obj, read_vrml, write_obj, write_vrml};
use relief::raster::{read_esri_ascii_grid, read_ppm};
use relief::simplify::{SimplifyError, Target};
use relief::stats::{decimation_stats, MeshStats, StatsPair};
use relief::terrain::{self, DiagonalRule};
use relief::{Mesh, SimplifyParams};

use crate::report::{render_table, Report, SizeEntry};
use crate::{
    CliError, ConvertArgs, Diagonal, GenerateArgs, PipelineArgs, SimplifyArgs, StatsArgs,
    TargetArgs, TuningArgs,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum MeshFormat {
    Vrml,
    Obj,
}

fn extension_of(path: &Path) -> Option<String> {
    path.extension()
        .map(|e| e.to_string_lossy().to_ascii_lowercase())
}

fn mesh_format(path: &Path) -> Result<MeshFormat, CliError> {
    match extension_of(path).as_deref() {
        Some("wrl") => Ok(MeshFormat::Vrml),
        Some("obj") => Ok(MeshFormat::Obj),
        _ => Err(CliError::Usage(format!(
            "{}: mesh files use the .wrl or .obj extension",
            path.display()
        ))),
    }
}

fn expect_extension(path: &Path, ext: &str) -> Result<(), CliError> {
    if extension_of(path).as_deref() == Some(ext) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{}: expected a .{ext} file",
            path.display()
        )))
    }
}

fn data(path: &Path, err: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {err}", path.display()))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| data(path, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| data(path, e))
}

fn read_mesh(path: &Path) -> Result<(Mesh, u64), CliError> {
    let bytes = read_bytes(path)?;
    let mesh = match mesh_format(path)? {
        MeshFormat::Vrml => read_vrml(&bytes).map_err(|e| data(path, e))?,
        MeshFormat::Obj => read_obj(&bytes).map_err(|e| data(path, e))?,
    };
    Ok((mesh, bytes.len() as u64))
}

/// Serializes to the format of the extension. OBJ output with a texture
/// also writes the MTL companion beside it. Returns the size of the
/// mesh file itself.
fn write_mesh(path: &Path, mesh: &Mesh) -> Result<u64, CliError> {
    let bytes = match mesh_format(path)? {
        MeshFormat::Vrml => write_vrml(mesh),
        MeshFormat::Obj => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "mesh".to_string());
            let (obj, mtl) = write_obj(mesh, &stem);
            if let Some(mtl) = mtl {
                write_bytes(&path.with_extension("mtl"), &mtl)?;
            }
            obj
        }
    };
    write_bytes(path, &bytes)?;
    Ok(bytes.len() as u64)
}

fn rule(diagonal: Diagonal) -> DiagonalRule {
    match diagonal {
        Diagonal::Fixed => DiagonalRule::FixedNwSe,
        Diagonal::Shortest => DiagonalRule::Shortest,
    }
}

fn build_terrain(
    dem: &Path,
    texture: Option<&PathBuf>,
    z_scale: f64,
    diagonal: Diagonal,
) -> Result<Mesh, CliError> {
    if !z_scale.is_finite() {
        return Err(CliError::Usage("--z-scale must be finite".to_string()));
    }
    expect_extension(dem, "asc")?;
    if let Some(tex) = texture {
        expect_extension(tex, "ppm")?;
    }
    let hf: relief::HeightField =
        read_esri_ascii_grid(&read_bytes(dem)?).map_err(|e| data(dem, e))?;
    let mut mesh = terrain::generate(&hf, z_scale, rule(diagonal)).map_err(|e| data(dem, e))?;
    if let Some(tex) = texture {
        let image = read_ppm(&read_bytes(tex)?).map_err(|e| data(tex, e))?;
        let drape = terrain::drape_check(&mesh, &image).map_err(|e| data(tex, e))?;
        if !drape.is_clean() {
            return Err(data(
                tex,
                format!(
                    "{} texture coordinates fall outside the image",
                    drape.violations.len()
                ),
            ));
        }
        mesh.texture_name = tex.file_name().map(|n| n.to_string_lossy().into_owned());
    }
    Ok(mesh)
}

fn build_params(target: &TargetArgs, tuning: &TuningArgs) -> Result<SimplifyParams, CliError> {
    let target = match (target.target_faces, target.target_ratio) {
        (Some(n), None) => Target::Faces(n),
        (None, Some(r)) => Target::Ratio(r),
        // clap's argument group keeps this unreachable, but the check
        // must not depend on it
        _ => {
            return Err(CliError::Usage(
                "exactly one of --target-faces and --target-ratio is required".to_string(),
            ))
        }
    };
    let params = SimplifyParams {
        target,
        quality_threshold: tuning.quality,
        preserve_boundary: !tuning.no_preserve_boundary,
        boundary_weight: tuning.boundary_weight,
        preserve_normal: !tuning.no_preserve_normal,
        planar_weight: tuning.planar_weight,
        preserve_topology: true,
    };
    params.check().map_err(|e| match e {
        SimplifyError::InvalidParams(msg) => CliError::Usage(msg),
        SimplifyError::InvalidMesh(msg) => CliError::Data(msg),
    })?;
    Ok(params)
}

fn run_simplify(mesh: &Mesh, params: &SimplifyParams) -> Result<(Mesh, bool), CliError> {
    let (out, summary) = relief::simplify::simplify(mesh, params).map_err(|e| match e {
        SimplifyError::InvalidParams(msg) => CliError::Usage(msg),
        SimplifyError::InvalidMesh(msg) => CliError::Data(msg),
    })?;
    Ok((out, summary.target_reached))
}

fn emit_report(
    path: Option<&Path>,
    pair: &StatsPair,
    target_reached: Option<bool>,
) -> Result<(), CliError> {
    if let Some(path) = path {
        write_bytes(path, Report::new(pair, target_reached).to_json().as_bytes())?;
    }
    Ok(())
}

pub fn generate(args: GenerateArgs) -> Result<(), CliError> {
    mesh_format(&args.out)?;
    let mesh = build_terrain(&args.dem, args.texture.as_ref(), args.z_scale, args.diagonal)?;
    let bytes = write_mesh(&args.out, &mesh)?;
    println!(
        "{} vertices, {} faces, {} bytes",
        mesh.vertex_count(),
        mesh.face_count(),
        bytes
    );
    Ok(())
}

pub fn simplify(args: SimplifyArgs) -> Result<(), CliError> {
    mesh_format(&args.out)?;
    let params = build_params(&args.target, &args.tuning)?;
    let (mesh, in_bytes) = read_mesh(&args.r#in)?;
    let (out_mesh, target_reached) = run_simplify(&mesh, &params)?;
    let out_bytes = write_mesh(&args.out, &out_mesh)?;
    let pair = decimation_stats(&mesh, in_bytes, &out_mesh, out_bytes);
    print!("{}", render_table(&pair));
    emit_report(args.report.as_deref(), &pair, Some(target_reached))
}

pub fn convert(args: ConvertArgs) -> Result<(), CliError> {
    mesh_format(&args.out)?;
    let (mesh, in_bytes) = read_mesh(&args.r#in)?;
    let out_bytes = write_mesh(&args.out, &mesh)?;
    let delta = if in_bytes == 0 {
        0.0
    } else {
        100.0 * (out_bytes as f64 - in_bytes as f64) / in_bytes as f64
    };
    println!("{}: {} bytes", args.r#in.display(), in_bytes);
    println!("{}: {} bytes", args.out.display(), out_bytes);
    println!("size delta: {delta:+.2}%");
    Ok(())
}

pub fn stats(args: StatsArgs) -> Result<(), CliError> {
    let (mesh, bytes) = read_mesh(&args.r#in)?;
    let current = MeshStats::of_mesh(&mesh, bytes);
    match &args.baseline {
        None => {
            let entry = SizeEntry::from(current);
            let mut json = serde_json::to_string_pretty(&entry).expect("entry serializes");
            json.push('\n');
            print!("{json}");
        }
        Some(base) => {
            let (base_mesh, base_bytes) = read_mesh(base)?;
            let pair = StatsPair::new(MeshStats::of_mesh(&base_mesh, base_bytes), current);
            print!("{}", Report::new(&pair, None).to_json());
        }
    }
    Ok(())
}

pub fn pipeline(args: PipelineArgs) -> Result<(), CliError> {
    expect_extension(&args.out, "obj")?;
    let params = build_params(&args.target, &args.tuning)?;
    let mesh = build_terrain(&args.dem, args.texture.as_ref(), args.z_scale, args.diagonal)?;

    // the VRML intermediate is a real artifact: written out, then read
    // back, so the simplifier sees exactly what the file holds
    let wrl_path = args.out.with_extension("wrl");
    let wrl_bytes = write_mesh(&wrl_path, &mesh)?;
    let (back, _) = read_mesh(&wrl_path)?;

    let (out_mesh, target_reached) = run_simplify(&back, &params)?;
    let out_bytes = write_mesh(&args.out, &out_mesh)?;
    let pair = decimation_stats(&back, wrl_bytes, &out_mesh, out_bytes);
    print!("{}", render_table(&pair));
    emit_report(args.report.as_deref(), &pair, Some(target_reached))
}
