//! Indexed triangle mesh with adjacency queries and validation.
//!
//! The mesh is stored as flat vertex and face lists, which maps directly
//! onto the interchange formats. Connectivity ([`Adjacency`]) is derived
//! on demand and never stored inside the mesh itself.

mod adjacency;
mod validate;

pub use adjacency::{Adjacency, EdgeFaces};
pub use validate::{validate, ValidationReport};

use thiserror::Error;

use crate::geom::{triangle_area, triangle_cross, Uv, Vec3};
use crate::num::Real;

/// A face is treated as geometrically degenerate when its area falls below
/// this fraction of the squared bounding-box diagonal.
pub const DEGENERATE_AREA_FACTOR: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("face {face} has zero or below-threshold area")]
    DegenerateFace { face: usize },
    #[error("operation requires a non-empty mesh")]
    EmptyMesh,
    #[error("face {face} references vertex {index} but the mesh has {vertex_count} vertices")]
    IndexOutOfRange {
        face: usize,
        index: u32,
        vertex_count: usize,
    },
}

/// Indexed triangle mesh: positions, optional per-vertex texture
/// coordinates, and 0-based index triples.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriMesh<S> {
    pub positions: Vec<Vec3<S>>,
    /// Per-vertex texture coordinates; when present, one entry per position.
    pub uvs: Option<Vec<Uv<S>>>,
    pub faces: Vec<[u32; 3]>,
    /// File name of the image draped over the mesh, carried through the
    /// interchange formats by reference (never embedded).
    pub texture_name: Option<String>,
}

impl<S: Real> TriMesh<S> {
    pub fn new(positions: Vec<Vec3<S>>, faces: Vec<[u32; 3]>) -> Self {
        Self {
            positions,
            uvs: None,
            faces,
            texture_name: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    fn face_corners(&self, face: usize) -> Result<(Vec3<S>, Vec3<S>, Vec3<S>), MeshError> {
        let idx = self.faces[face];
        for &i in &idx {
            if (i as usize) >= self.positions.len() {
                return Err(MeshError::IndexOutOfRange {
                    face,
                    index: i,
                    vertex_count: self.positions.len(),
                });
            }
        }
        Ok((
            self.positions[idx[0] as usize],
            self.positions[idx[1] as usize],
            self.positions[idx[2] as usize],
        ))
    }

    /// Unit normal of a face by the right-hand rule over its vertex order.
    ///
    /// Fails with [`MeshError::DegenerateFace`] when the face area is below
    /// the degeneracy threshold relative to the mesh bounding box.
    pub fn face_normal(&self, face: usize) -> Result<Vec3<S>, MeshError> {
        let (a, b, c) = self.face_corners(face)?;
        let area = triangle_area(a, b, c);
        let (lo, hi) = self.bounding_box()?;
        let diag_sq = (hi - lo).length_squared();
        if area.to_f64_lossy() < DEGENERATE_AREA_FACTOR * diag_sq.to_f64_lossy()
            || area <= S::zero()
        {
            return Err(MeshError::DegenerateFace { face });
        }
        triangle_cross(a, b, c)
            .normalized()
            .ok_or(MeshError::DegenerateFace { face })
    }

    /// Componentwise bounding box over all vertices.
    pub fn bounding_box(&self) -> Result<(Vec3<S>, Vec3<S>), MeshError> {
        let mut it = self.positions.iter();
        let first = *it.next().ok_or(MeshError::EmptyMesh)?;
        let mut lo = first;
        let mut hi = first;
        for &p in it {
            lo = lo.min_components(p);
            hi = hi.max_components(p);
        }
        Ok((lo, hi))
    }

    pub fn bounding_box_diagonal(&self) -> Result<S, MeshError> {
        let (lo, hi) = self.bounding_box()?;
        Ok((hi - lo).length())
    }

    /// Sum of all triangle areas.
    pub fn surface_area(&self) -> Result<S, MeshError> {
        if self.faces.is_empty() {
            return Err(MeshError::EmptyMesh);
        }
        let mut total = S::zero();
        for face in 0..self.faces.len() {
            let (a, b, c) = self.face_corners(face)?;
            total += triangle_area(a, b, c);
        }
        Ok(total)
    }

    /// Edges with exactly one incident face, as sorted `(min, max)` pairs.
    pub fn boundary_edges(&self) -> Vec<(u32, u32)> {
        Adjacency::new(self).boundary_edges().collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}
