//! Gridding an elevation field into a textured triangle mesh.

use thiserror::Error;

use crate::geom::{Uv, Vec3};
use crate::mesh::TriMesh;
use crate::num::Real;
use crate::raster::{HeightField, TextureImage};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TerrainError {
    #[error("grid must be at least 2x2 cells of nodes, got {ncols}x{nrows}")]
    DegenerateGrid { ncols: usize, nrows: usize },
    #[error("mesh has no texture coordinates to check")]
    MissingUvs,
}

/// How each grid cell is split into two triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagonalRule {
    /// Every cell splits along its NW-SE diagonal.
    #[default]
    FixedNwSe,
    /// Each cell splits along its 3D-shorter diagonal; ties fall back to
    /// NW-SE.
    Shortest,
}

/// Builds a terrain mesh from an elevation grid.
///
/// One vertex is emitted per non-nodata grid node, in row-major order
/// starting at the north-west corner. Grid row 0 maps to the largest y so
/// the mesh is right-handed with +z up; faces wind counter-clockwise seen
/// from above. A cell contributes two triangles only when all four of its
/// corners hold data, so nodata regions become holes.
///
/// `z_scale` multiplies elevations (vertical exaggeration); callers keep
/// it positive.
pub fn generate<S: Real>(
    hf: &HeightField<S>,
    z_scale: S,
    rule: DiagonalRule,
) -> Result<TriMesh<S>, TerrainError> {
    if hf.ncols < 2 || hf.nrows < 2 {
        return Err(TerrainError::DegenerateGrid {
            ncols: hf.ncols,
            nrows: hf.nrows,
        });
    }

    let mut node_vertex: Vec<Option<u32>> = vec![None; hf.ncols * hf.nrows];
    let mut positions = Vec::new();
    let mut uvs = Vec::new();
    let u_span = S::of((hf.ncols - 1) as f64);
    let v_span = S::of((hf.nrows - 1) as f64);
    for row in 0..hf.nrows {
        for col in 0..hf.ncols {
            if hf.is_nodata(row, col) {
                continue;
            }
            let x = hf.xll + S::of(col as f64) * hf.cellsize;
            let y = hf.yll + S::of((hf.nrows - 1 - row) as f64) * hf.cellsize;
            let z = z_scale * hf.value(row, col);
            node_vertex[row * hf.ncols + col] = Some(positions.len() as u32);
            positions.push(Vec3::new(x, y, z));
            uvs.push(Uv::new(S::of(col as f64) / u_span, S::of(row as f64) / v_span));
        }
    }

    let mut faces = Vec::new();
    for row in 0..hf.nrows - 1 {
        for col in 0..hf.ncols - 1 {
            let nw = node_vertex[row * hf.ncols + col];
            let ne = node_vertex[row * hf.ncols + col + 1];
            let sw = node_vertex[(row + 1) * hf.ncols + col];
            let se = node_vertex[(row + 1) * hf.ncols + col + 1];
            let (Some(nw), Some(ne), Some(sw), Some(se)) = (nw, ne, sw, se) else {
                continue;
            };
            let split_nw_se = match rule {
                DiagonalRule::FixedNwSe => true,
                DiagonalRule::Shortest => {
                    let d_nw_se = positions[nw as usize].distance(positions[se as usize]);
                    let d_ne_sw = positions[ne as usize].distance(positions[sw as usize]);
                    d_nw_se <= d_ne_sw
                }
            };
            if split_nw_se {
                faces.push([nw, sw, se]);
                faces.push([nw, se, ne]);
            } else {
                faces.push([nw, sw, ne]);
                faces.push([ne, sw, se]);
            }
        }
    }

    Ok(TriMesh {
        positions,
        uvs: Some(uvs),
        faces,
        texture_name: None,
    })
}

/// Vertices whose texture coordinate falls outside the unit square, i.e.
/// would sample outside the draped image.
#[derive(Debug, Clone, PartialEq)]
pub struct DrapeReport<S> {
    pub image_width: usize,
    pub image_height: usize,
    pub violations: Vec<(u32, Uv<S>)>,
}

impl<S> DrapeReport<S> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn drape_check<S: Real>(
    mesh: &TriMesh<S>,
    tex: &TextureImage,
) -> Result<DrapeReport<S>, TerrainError> {
    let uvs = mesh.uvs.as_ref().ok_or(TerrainError::MissingUvs)?;
    let violations = uvs
        .iter()
        .enumerate()
        .filter(|(_, uv)| !uv.in_unit_square())
        .map(|(i, uv)| (i as u32, *uv))
        .collect();
    Ok(DrapeReport {
        image_width: tex.width,
        image_height: tex.height,
        violations,
    })
}
