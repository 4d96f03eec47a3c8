//! Derived mesh connectivity.
//!
//! Built with sorts over index pairs rather than hashing so that every
//! query returns results in a reproducible order regardless of process
//! or platform.

use super::TriMesh;

/// An undirected edge `(min, max)` together with the faces incident to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFaces {
    pub edge: (u32, u32),
    pub faces: Vec<u32>,
}

/// Connectivity snapshot of a mesh: unique edges with incident-face lists
/// and per-vertex incident-face lists. Indices out of range are ignored
/// here; [`super::validate`] reports them.
#[derive(Debug, Clone)]
pub struct Adjacency {
    edges: Vec<EdgeFaces>,
    vertex_faces: Vec<Vec<u32>>,
    face_count: usize,
}

impl Adjacency {
    pub fn new<S>(mesh: &TriMesh<S>) -> Self {
        let vertex_count = mesh.positions.len();
        let mut half_edges: Vec<(u32, u32, u32)> = Vec::with_capacity(mesh.faces.len() * 3);
        let mut vertex_faces: Vec<Vec<u32>> = vec![Vec::new(); vertex_count];
        for (f, idx) in mesh.faces.iter().enumerate() {
            let f = f as u32;
            for k in 0..3 {
                let a = idx[k];
                let b = idx[(k + 1) % 3];
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                half_edges.push((lo, hi, f));
            }
            for &v in idx {
                if (v as usize) < vertex_count && vertex_faces[v as usize].last() != Some(&f) {
                    vertex_faces[v as usize].push(f);
                }
            }
        }
        half_edges.sort_unstable();
        let mut edges: Vec<EdgeFaces> = Vec::new();
        for (lo, hi, f) in half_edges {
            match edges.last_mut() {
                Some(rec) if rec.edge == (lo, hi) => rec.faces.push(f),
                _ => edges.push(EdgeFaces {
                    edge: (lo, hi),
                    faces: vec![f],
                }),
            }
        }
        Self {
            edges,
            vertex_faces,
            face_count: mesh.faces.len(),
        }
    }

    /// Unique undirected edges in ascending `(min, max)` order.
    pub fn edges(&self) -> &[EdgeFaces] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Faces incident to `vertex`, in face-index order.
    pub fn faces_of(&self, vertex: u32) -> &[u32] {
        &self.vertex_faces[vertex as usize]
    }

    /// Edges incident to exactly one face.
    pub fn boundary_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges
            .iter()
            .filter(|e| e.faces.len() == 1)
            .map(|e| e.edge)
    }

    /// Edges incident to three or more faces.
    pub fn non_manifold_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges
            .iter()
            .filter(|e| e.faces.len() >= 3)
            .map(|e| e.edge)
    }

    /// Vertices referenced by no face.
    pub fn isolated_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertex_faces
            .iter()
            .enumerate()
            .filter(|(_, faces)| faces.is_empty())
            .map(|(v, _)| v as u32)
    }

    /// V - E + F. Equals 2 for a closed surface of genus 0.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_faces.len() as i64 - self.edges.len() as i64 + self.face_count as i64
    }
}
