//! Before/after mesh accounting.

use crate::mesh::TriMesh;

/// Counts for one mesh. `file_size_bytes` is 0 for a mesh that never
/// touched disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeshStats {
    pub vertex_count: usize,
    pub face_count: usize,
    pub file_size_bytes: u64,
}

impl MeshStats {
    pub fn of_mesh<S>(mesh: &TriMesh<S>, file_size_bytes: u64) -> Self {
        Self {
            vertex_count: mesh.positions.len(),
            face_count: mesh.faces.len(),
            file_size_bytes,
        }
    }

    /// File size in binary kilobytes (1 KB = 1024 bytes).
    pub fn size_kb(&self) -> f64 {
        self.file_size_bytes as f64 / 1024.0
    }
}

/// Before/after pair with both ways of reading the change: how much was
/// removed (reduction) and how much remains (survival). Reporting both
/// avoids the ambiguity of a bare "percent" between the two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsPair {
    pub before: MeshStats,
    pub after: MeshStats,
    pub vertex_reduction_pct: f64,
    pub face_reduction_pct: f64,
    pub size_reduction_pct: f64,
    pub vertex_survival_pct: f64,
    pub face_survival_pct: f64,
    pub size_survival_pct: f64,
}

/// 100·(before−after)/before; 0 when there was nothing before.
fn reduction_pct(before: f64, after: f64) -> f64 {
    if before == 0.0 {
        0.0
    } else {
        100.0 * (before - after) / before
    }
}

/// 100·after/before; 100 when there was nothing before.
fn survival_pct(before: f64, after: f64) -> f64 {
    if before == 0.0 {
        100.0
    } else {
        100.0 * after / before
    }
}

impl StatsPair {
    pub fn new(before: MeshStats, after: MeshStats) -> Self {
        let v = (before.vertex_count as f64, after.vertex_count as f64);
        let f = (before.face_count as f64, after.face_count as f64);
        let s = (before.file_size_bytes as f64, after.file_size_bytes as f64);
        Self {
            before,
            after,
            vertex_reduction_pct: reduction_pct(v.0, v.1),
            face_reduction_pct: reduction_pct(f.0, f.1),
            size_reduction_pct: reduction_pct(s.0, s.1),
            vertex_survival_pct: survival_pct(v.0, v.1),
            face_survival_pct: survival_pct(f.0, f.1),
            size_survival_pct: survival_pct(s.0, s.1),
        }
    }
}

/// Accounting for a simplification run: meshes plus their serialized sizes.
pub fn decimation_stats<S>(
    before: &TriMesh<S>,
    before_size_bytes: u64,
    after: &TriMesh<S>,
    after_size_bytes: u64,
) -> StatsPair {
    StatsPair::new(
        MeshStats::of_mesh(before, before_size_bytes),
        MeshStats::of_mesh(after, after_size_bytes),
    )
}
