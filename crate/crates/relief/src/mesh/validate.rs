//! Structural mesh diagnostics.

use super::{Adjacency, TriMesh};

/// Findings from a structural pass over a mesh. Every list is sorted.
///
/// Isolated vertices are reported but do not fail [`is_valid`]: terrain
/// grids legitimately keep vertices whose surrounding cells were all
/// suppressed, and the interchange formats round-trip them.
///
/// [`is_valid`]: ValidationReport::is_valid
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Faces referencing a vertex index >= vertex count.
    pub out_of_range_faces: Vec<u32>,
    /// Faces whose index triple repeats a vertex.
    pub degenerate_faces: Vec<u32>,
    /// Edges shared by three or more faces.
    pub non_manifold_edges: Vec<(u32, u32)>,
    /// Later faces with the same unordered vertex set as an earlier face.
    pub duplicate_faces: Vec<u32>,
    /// Vertices referenced by no face.
    pub isolated_vertices: Vec<u32>,
    /// True when texture coordinates are present but their count does not
    /// match the vertex count.
    pub uv_count_mismatch: bool,
}

impl ValidationReport {
    /// True when no structural defect was found. Isolated vertices do not
    /// count as defects.
    pub fn is_valid(&self) -> bool {
        self.out_of_range_faces.is_empty()
            && self.degenerate_faces.is_empty()
            && self.non_manifold_edges.is_empty()
            && self.duplicate_faces.is_empty()
            && !self.uv_count_mismatch
    }
}

pub fn validate<S>(mesh: &TriMesh<S>) -> ValidationReport {
    let vertex_count = mesh.positions.len() as u32;
    let mut report = ValidationReport::default();

    let mut keyed: Vec<([u32; 3], u32)> = Vec::with_capacity(mesh.faces.len());
    for (f, idx) in mesh.faces.iter().enumerate() {
        let f = f as u32;
        if idx.iter().any(|&i| i >= vertex_count) {
            report.out_of_range_faces.push(f);
        }
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            report.degenerate_faces.push(f);
        }
        let mut key = *idx;
        key.sort_unstable();
        keyed.push((key, f));
    }

    keyed.sort_unstable();
    for pair in keyed.windows(2) {
        if pair[0].0 == pair[1].0 {
            report.duplicate_faces.push(pair[1].1);
        }
    }
    report.duplicate_faces.sort_unstable();

    let adj = Adjacency::new(mesh);
    report.non_manifold_edges = adj.non_manifold_edges().collect();
    report.isolated_vertices = adj.isolated_vertices().collect();

    if let Some(uvs) = &mesh.uvs {
        report.uv_count_mismatch = uvs.len() != mesh.positions.len();
    }

    report
}
