//! Greedy constrained edge-collapse decimation driven by error quadrics.
//!
//! [`simplify`] is the one-call entry point. [`Decimator`] exposes the
//! same machinery one collapse at a time, for callers that need to steer
//! or inspect the sequence (the test suites replay and exhaustively
//! search it).

mod quadric;

pub use quadric::Quadric;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::geom::{triangle_cross, Uv, Vec3};
use crate::mesh::{Adjacency, MeshError, TriMesh};
use crate::num::Real;
use crate::stats::MeshStats;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplifyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("mesh not simplifiable: {0}")]
    InvalidMesh(String),
}

/// Stop condition: an absolute face count or a fraction of the input
/// face count (resolved as ceil(ratio * faces)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target<S> {
    Faces(usize),
    Ratio(S),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplifyParams<S> {
    pub target: Target<S>,
    /// Hard lower bound on surviving triangle shape quality; 0 disables.
    pub quality_threshold: S,
    pub preserve_boundary: bool,
    pub boundary_weight: S,
    pub preserve_normal: bool,
    /// Strength of the flat-region regularization term; 0 disables.
    pub planar_weight: S,
    pub preserve_topology: bool,
}

impl<S: Real> SimplifyParams<S> {
    fn with_target(target: Target<S>) -> Self {
        Self {
            target,
            quality_threshold: S::of(0.3),
            preserve_boundary: true,
            boundary_weight: S::of(1000.0),
            preserve_normal: true,
            planar_weight: S::of(0.001),
            preserve_topology: true,
        }
    }

    pub fn with_target_faces(faces: usize) -> Self {
        Self::with_target(Target::Faces(faces))
    }

    pub fn with_target_ratio(ratio: S) -> Self {
        Self::with_target(Target::Ratio(ratio))
    }

    pub fn check(&self) -> Result<(), SimplifyError> {
        let bad = |msg: &str| Err(SimplifyError::InvalidParams(msg.to_string()));
        match self.target {
            Target::Faces(0) => return bad("target face count must be positive"),
            Target::Faces(_) => {}
            Target::Ratio(r) => {
                if !(r > S::zero() && r <= S::one()) {
                    return bad("target ratio must lie in (0, 1]");
                }
            }
        }
        if !(self.quality_threshold >= S::zero() && self.quality_threshold <= S::one()) {
            return bad("quality threshold must lie in [0, 1]");
        }
        if !(self.boundary_weight > S::zero()) {
            return bad("boundary weight must be positive");
        }
        if !(self.planar_weight >= S::zero()) {
            return bad("planar weight must be non-negative");
        }
        Ok(())
    }

    /// Target face count for a mesh currently holding `face_count`
    /// faces; ratios resolve as ceil(ratio * face_count).
    pub fn resolved_target(&self, face_count: usize) -> usize {
        match self.target {
            Target::Faces(n) => n,
            Target::Ratio(r) => (r.to_f64_lossy() * face_count as f64).ceil() as usize,
        }
    }
}

/// Shape quality 4*sqrt(3)*area / (sum of squared edge lengths):
/// 1 for equilateral, 0 for collinear.
pub fn triangle_quality<S: Real>(a: Vec3<S>, b: Vec3<S>, c: Vec3<S>) -> S {
    let denom = (b - a).length_squared() + (c - b).length_squared() + (a - c).length_squared();
    if denom <= S::zero() {
        return S::zero();
    }
    let area = triangle_cross(a, b, c).length() * S::of(0.5);
    S::of(4.0 * 3.0f64.sqrt()) * area / denom
}

/// Area-weighted quadric of one face's supporting plane.
pub fn plane_quadric<S: Real>(mesh: &TriMesh<S>, face: usize) -> Result<Quadric<S>, MeshError> {
    let normal = mesh.face_normal(face)?;
    let [i, j, k] = mesh.faces[face];
    let a = mesh.positions[i as usize];
    let b = mesh.positions[j as usize];
    let c = mesh.positions[k as usize];
    let area = triangle_cross(a, b, c).length() * S::of(0.5);
    Ok(Quadric::from_point_normal(a, normal).scaled(area))
}

/// Per-vertex accumulated quadrics: each face's plane quadric summed
/// into its three corners. With `preserve_boundary`, every boundary edge
/// also contributes a constraint quadric from the plane that contains
/// the edge and stands perpendicular to its single incident face,
/// weighted by `boundary_weight` times the squared edge length.
pub fn vertex_quadrics<S: Real>(
    mesh: &TriMesh<S>,
    preserve_boundary: bool,
    boundary_weight: S,
) -> Vec<Quadric<S>> {
    let mut quadrics = vec![Quadric::zero(); mesh.positions.len()];
    for idx in &mesh.faces {
        let a = mesh.positions[idx[0] as usize];
        let b = mesh.positions[idx[1] as usize];
        let c = mesh.positions[idx[2] as usize];
        if let Some(q) = Quadric::from_triangle(a, b, c) {
            for &v in idx {
                quadrics[v as usize] += q;
            }
        }
    }
    if preserve_boundary {
        let adjacency = Adjacency::new(mesh);
        for rec in adjacency.edges() {
            let [face] = rec.faces[..] else { continue };
            let (u, v) = rec.edge;
            let pu = mesh.positions[u as usize];
            let pv = mesh.positions[v as usize];
            let idx = mesh.faces[face as usize];
            let Some(face_normal) = triangle_cross(
                mesh.positions[idx[0] as usize],
                mesh.positions[idx[1] as usize],
                mesh.positions[idx[2] as usize],
            )
            .normalized() else {
                continue;
            };
            let Some(constraint_normal) = (pv - pu).cross(face_normal).normalized() else {
                continue;
            };
            let weight = boundary_weight * (pv - pu).length_squared();
            let q = Quadric::from_point_normal(pu, constraint_normal).scaled(weight);
            quadrics[u as usize] += q;
            quadrics[v as usize] += q;
        }
    }
    quadrics
}

/// Minimizes `q` for an edge collapse of `v1`-`v2`. Solves the linear
/// system when it is well conditioned; otherwise falls back to the best
/// of v1, v2 and the midpoint (ties prefer the midpoint). The returned
/// cost is clamped to zero from below.
pub fn optimal_placement<S: Real>(q: &Quadric<S>, v1: Vec3<S>, v2: Vec3<S>) -> (Vec3<S>, S) {
    if v1 == v2 {
        return (v1, q.evaluate(v1).max(S::zero()));
    }
    let position = match q.minimizer() {
        Some(p) => p,
        None => {
            let mid = (v1 + v2) * S::of(0.5);
            let (c1, c2, cm) = (q.evaluate(v1), q.evaluate(v2), q.evaluate(mid));
            if cm <= c1 && cm <= c2 {
                mid
            } else if c1 <= c2 {
                v1
            } else {
                v2
            }
        }
    };
    (position, q.evaluate(position).max(S::zero()))
}

/// One proposed edge collapse, valid for the decimator state it was
/// computed against.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<S> {
    /// Lower vertex index of the edge; the collapse keeps this vertex.
    pub a: u32,
    /// Higher vertex index; merged away.
    pub b: u32,
    pub position: Vec3<S>,
    pub uv: Option<Uv<S>>,
    pub cost: S,
}

#[derive(Debug, Clone, PartialEq)]
struct Entry<S> {
    cost: S,
    a: u32,
    b: u32,
    va: u32,
    vb: u32,
    position: Vec3<S>,
    uv: Option<Uv<S>>,
}

impl<S: Real> Eq for Entry<S> {}

impl<S: Real> Ord for Entry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties break on (min index, max index) so runs are reproducible
        self.cost
            .partial_cmp(&other.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.va.cmp(&other.va))
            .then_with(|| self.vb.cmp(&other.vb))
    }
}

impl<S: Real> PartialOrd for Entry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Decimation working state. [`evaluate_edge`] is the single authority
/// on which collapses are legal and where they place the merged vertex;
/// [`apply`] commits one of its results.
///
/// [`evaluate_edge`]: Decimator::evaluate_edge
/// [`apply`]: Decimator::apply
#[derive(Debug, Clone)]
pub struct Decimator<S> {
    params: SimplifyParams<S>,
    positions: Vec<Vec3<S>>,
    uvs: Option<Vec<Uv<S>>>,
    faces: Vec<[u32; 3]>,
    face_alive: Vec<bool>,
    vertex_alive: Vec<bool>,
    /// Incident faces per vertex; may hold dead entries, pruned on touch.
    vertex_faces: Vec<Vec<u32>>,
    quadrics: Vec<Quadric<S>>,
    versions: Vec<u32>,
    live_faces: usize,
    /// Input bounding-box diagonal; scales the planar term.
    diag: S,
    texture_name: Option<String>,
}

impl<S: Real> Decimator<S> {
    pub fn new(mesh: &TriMesh<S>, params: SimplifyParams<S>) -> Result<Self, SimplifyError> {
        params.check()?;
        let vertex_count = mesh.positions.len();
        for (f, idx) in mesh.faces.iter().enumerate() {
            if idx.iter().any(|&i| i as usize >= vertex_count) {
                return Err(SimplifyError::InvalidMesh(format!(
                    "face {f} references a vertex beyond the {vertex_count} available"
                )));
            }
            if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                return Err(SimplifyError::InvalidMesh(format!(
                    "face {f} repeats a vertex index"
                )));
            }
        }
        let mut vertex_faces = vec![Vec::new(); vertex_count];
        for (f, idx) in mesh.faces.iter().enumerate() {
            for &v in idx {
                vertex_faces[v as usize].push(f as u32);
            }
        }
        let diag = mesh.bounding_box_diagonal().unwrap_or_else(|_| S::zero());
        Ok(Self {
            quadrics: vertex_quadrics(mesh, params.preserve_boundary, params.boundary_weight),
            params,
            positions: mesh.positions.clone(),
            uvs: mesh.uvs.clone(),
            face_alive: vec![true; mesh.faces.len()],
            vertex_alive: vec![true; vertex_count],
            faces: mesh.faces.clone(),
            vertex_faces,
            versions: vec![0; vertex_count],
            live_faces: mesh.faces.len(),
            diag,
            texture_name: mesh.texture_name.clone(),
        })
    }

    pub fn face_count(&self) -> usize {
        self.live_faces
    }

    fn alive_faces_of(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.vertex_faces[v as usize]
            .iter()
            .copied()
            .filter(|&f| self.face_alive[f as usize])
    }

    /// Neighbor vertices of `v` with the number of live faces on the
    /// connecting edge, ascending by vertex index.
    fn neighbor_counts(&self, v: u32) -> Vec<(u32, u32)> {
        let mut nbrs = Vec::new();
        for f in self.alive_faces_of(v) {
            for &u in &self.faces[f as usize] {
                if u != v {
                    nbrs.push(u);
                }
            }
        }
        nbrs.sort_unstable();
        let mut counts: Vec<(u32, u32)> = Vec::with_capacity(nbrs.len());
        for u in nbrs {
            match counts.last_mut() {
                Some((last, n)) if *last == u => *n += 1,
                _ => counts.push((u, 1)),
            }
        }
        counts
    }

    fn is_boundary_from_counts(counts: &[(u32, u32)]) -> bool {
        counts.iter().any(|&(_, n)| n == 1)
    }

    fn shared_faces(&self, a: u32, b: u32) -> Vec<u32> {
        self.alive_faces_of(a)
            .filter(|&f| self.faces[f as usize].contains(&b))
            .collect()
    }

    /// All current edges as ascending `(min, max)` pairs.
    pub fn live_edges(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::with_capacity(self.live_faces * 3);
        for (f, idx) in self.faces.iter().enumerate() {
            if !self.face_alive[f] {
                continue;
            }
            for k in 0..3 {
                let a = idx[k];
                let b = idx[(k + 1) % 3];
                edges.push(if a < b { (a, b) } else { (b, a) });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    fn merged_uv(&self, a: u32, b: u32, position: Vec3<S>) -> Option<Uv<S>> {
        let uvs = self.uvs.as_ref()?;
        let pa = self.positions[a as usize];
        let pb = self.positions[b as usize];
        let d = pb - pa;
        let len_sq = d.length_squared();
        let t = if len_sq > S::zero() {
            ((position - pa).dot(d) / len_sq).max(S::zero()).min(S::one())
        } else {
            S::of(0.5)
        };
        Some(uvs[a as usize].lerp(uvs[b as usize], t))
    }

    /// Judges the collapse of edge `(a, b)` against the current state.
    /// Returns the placement and cost when every enabled constraint
    /// passes, `None` otherwise (including "not currently an edge").
    pub fn evaluate_edge(&self, a: u32, b: u32) -> Option<Candidate<S>> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if a == b || !self.vertex_alive[a as usize] || !self.vertex_alive[b as usize] {
            return None;
        }
        let shared = self.shared_faces(a, b);
        // 1 incident face: boundary edge; 2: interior; 3+: non-manifold,
        // where collapse semantics are undefined
        if shared.is_empty() || shared.len() > 2 {
            return None;
        }
        let is_boundary_edge = shared.len() == 1;

        let counts_a = self.neighbor_counts(a);
        let counts_b = self.neighbor_counts(b);
        let a_boundary = Self::is_boundary_from_counts(&counts_a);
        let b_boundary = Self::is_boundary_from_counts(&counts_b);

        if self.params.preserve_topology {
            // link condition: shared neighbors must be exactly the apex
            // vertices of the shared faces
            let mut apexes: Vec<u32> = shared
                .iter()
                .flat_map(|&f| self.faces[f as usize])
                .filter(|&v| v != a && v != b)
                .collect();
            apexes.sort_unstable();
            apexes.dedup();
            let mut common: Vec<u32> = Vec::new();
            let (mut i, mut j) = (0, 0);
            while i < counts_a.len() && j < counts_b.len() {
                match counts_a[i].0.cmp(&counts_b[j].0) {
                    Ordering::Less => i += 1,
                    Ordering::Greater => j += 1,
                    Ordering::Equal => {
                        common.push(counts_a[i].0);
                        i += 1;
                        j += 1;
                    }
                }
            }
            if common != apexes {
                return None;
            }
            // joining two boundary vertices through the interior would
            // pinch the surface
            if a_boundary && b_boundary && !is_boundary_edge {
                return None;
            }
        }

        let pa = self.positions[a as usize];
        let pb = self.positions[b as usize];

        let mut q = self.quadrics[a as usize] + self.quadrics[b as usize];
        if self.params.planar_weight > S::zero() {
            let mut normal_sum = Vec3::zero();
            for &f in &shared {
                let [i, j, k] = self.faces[f as usize];
                if let Some(n) = triangle_cross(
                    self.positions[i as usize],
                    self.positions[j as usize],
                    self.positions[k as usize],
                )
                .normalized()
                {
                    normal_sum = normal_sum + n;
                }
            }
            if let Some(n) = normal_sum.normalized() {
                let mid = (pa + pb) * S::of(0.5);
                let weight = self.params.planar_weight * self.diag * self.diag;
                q += Quadric::from_point_normal(mid, n).scaled(weight);
            }
        }

        let (position, cost) = if self.params.preserve_boundary {
            match (a_boundary, b_boundary) {
                (true, true) if !is_boundary_edge => return None,
                (true, true) => Self::segment_placement(&q, pa, pb),
                (true, false) => (pa, q.evaluate(pa).max(S::zero())),
                (false, true) => (pb, q.evaluate(pb).max(S::zero())),
                (false, false) => optimal_placement(&q, pa, pb),
            }
        } else {
            optimal_placement(&q, pa, pb)
        };

        // simulate the surviving faces around both endpoints
        let mut keys: Vec<[u32; 3]> = Vec::new();
        for (vertex, other) in [(a, b), (b, a)] {
            for f in self.alive_faces_of(vertex) {
                let idx = self.faces[f as usize];
                if idx.contains(&other) {
                    continue; // dies with the edge
                }
                let corner = |v: u32| {
                    if v == a || v == b {
                        position
                    } else {
                        self.positions[v as usize]
                    }
                };
                let (p0, p1, p2) = (corner(idx[0]), corner(idx[1]), corner(idx[2]));
                if triangle_quality(p0, p1, p2) < self.params.quality_threshold {
                    return None;
                }
                if self.params.preserve_normal {
                    let before = triangle_cross(
                        self.positions[idx[0] as usize],
                        self.positions[idx[1] as usize],
                        self.positions[idx[2] as usize],
                    )
                    .normalized();
                    let after = triangle_cross(p0, p1, p2).normalized();
                    match (before, after) {
                        (Some(nb), Some(na)) => {
                            if nb.dot(na) < S::zero() {
                                return None;
                            }
                        }
                        (Some(_), None) => return None, // folds to zero area
                        _ => {}
                    }
                }
                let mut key = idx.map(|v| if v == b { a } else { v });
                key.sort_unstable();
                keys.push(key);
            }
        }
        // two faces folding onto the same vertex set would leave a
        // duplicate face in the output
        keys.sort_unstable();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }

        let uv = self.merged_uv(a, b, position);
        Some(Candidate {
            a,
            b,
            position,
            uv,
            cost,
        })
    }

    /// Minimizes q along the segment pa..pb (the collapse of a boundary
    /// edge may not leave its own segment).
    fn segment_placement(q: &Quadric<S>, pa: Vec3<S>, pb: Vec3<S>) -> (Vec3<S>, S) {
        let d = pb - pa;
        let half = S::of(0.5);
        let curvature = d.dot(q.apply_linear(d));
        let t = if curvature > S::zero() {
            let slope = S::of(2.0) * d.dot(q.apply_linear(pa) + q.linear_term());
            (-slope / (S::of(2.0) * curvature)).max(S::zero()).min(S::one())
        } else {
            let (c0, c1, cm) = (
                q.evaluate(pa),
                q.evaluate(pb),
                q.evaluate(pa + d * half),
            );
            if cm <= c0 && cm <= c1 {
                half
            } else if c0 <= c1 {
                S::zero()
            } else {
                S::one()
            }
        };
        let position = pa + d * t;
        (position, q.evaluate(position).max(S::zero()))
    }

    /// Commits a candidate obtained from [`evaluate_edge`] against the
    /// current state: merges `b` into `a`, retires the shared faces and
    /// sums the endpoint quadrics.
    pub fn apply(&mut self, cand: &Candidate<S>) {
        let Candidate { a, b, position, uv, .. } = cand.clone();
        for f in self.shared_faces(a, b) {
            self.face_alive[f as usize] = false;
            self.live_faces -= 1;
        }
        self.positions[a as usize] = position;
        if let (Some(uvs), Some(uv)) = (self.uvs.as_mut(), uv) {
            uvs[a as usize] = uv;
        }
        let q_b = self.quadrics[b as usize];
        self.quadrics[a as usize] += q_b;

        let b_faces = std::mem::take(&mut self.vertex_faces[b as usize]);
        for f in b_faces {
            if !self.face_alive[f as usize] {
                continue;
            }
            for slot in self.faces[f as usize].iter_mut() {
                if *slot == b {
                    *slot = a;
                }
            }
            self.vertex_faces[a as usize].push(f);
        }
        self.vertex_alive[b as usize] = false;
        self.versions[a as usize] += 1;
        self.versions[b as usize] += 1;

        // prune the merged vertex's incidence list
        let alive = &self.face_alive;
        self.vertex_faces[a as usize].retain(|&f| alive[f as usize]);
        self.vertex_faces[a as usize].sort_unstable();
        self.vertex_faces[a as usize].dedup();
    }

    /// Vertices whose edges should be re-evaluated after merging into
    /// `a`: the merged vertex's current neighborhood.
    fn refresh_edges(&self, a: u32) -> Vec<(u32, u32)> {
        self.neighbor_counts(a)
            .iter()
            .map(|&(u, _)| if a < u { (a, u) } else { (u, a) })
            .collect()
    }

    fn entry(&self, cand: Candidate<S>) -> Entry<S> {
        Entry {
            cost: cand.cost,
            a: cand.a,
            b: cand.b,
            va: self.versions[cand.a as usize],
            vb: self.versions[cand.b as usize],
            position: cand.position,
            uv: cand.uv,
        }
    }

    /// Extracts the current mesh: live vertices in original order, live
    /// faces in original order, indices renumbered.
    pub fn into_mesh(self) -> TriMesh<S> {
        let mut remap = vec![u32::MAX; self.positions.len()];
        let mut positions = Vec::new();
        let mut uvs = self.uvs.as_ref().map(|_| Vec::new());
        for v in 0..self.positions.len() {
            if !self.vertex_alive[v] {
                continue;
            }
            remap[v] = positions.len() as u32;
            positions.push(self.positions[v]);
            if let (Some(out), Some(src)) = (uvs.as_mut(), self.uvs.as_ref()) {
                out.push(src[v]);
            }
        }
        let faces = self
            .faces
            .iter()
            .enumerate()
            .filter(|&(f, _)| self.face_alive[f])
            .map(|(_, idx)| idx.map(|v| remap[v as usize]))
            .collect();
        TriMesh {
            positions,
            uvs,
            faces,
            texture_name: self.texture_name,
        }
    }
}

/// Result accounting for one [`simplify`] run. Sizes in the two
/// [`MeshStats`] are 0; serialization happens elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplifySummary {
    pub before: MeshStats,
    pub after: MeshStats,
    pub target_faces: usize,
    /// False when the constraints ran out of legal collapses early; the
    /// mesh returned is still the best state reached.
    pub target_reached: bool,
    pub collapses: usize,
    pub total_cost: f64,
}

/// Reduces `mesh` until its face count reaches the target or no legal
/// collapse remains. Cheapest-first with lazy requeueing: a popped
/// candidate is re-verified against the current state and re-queued
/// instead of applied whenever anything about it changed.
pub fn simplify<S: Real>(
    mesh: &TriMesh<S>,
    params: &SimplifyParams<S>,
) -> Result<(TriMesh<S>, SimplifySummary), SimplifyError> {
    let mut dec = Decimator::new(mesh, params.clone())?;
    let target = params.resolved_target(mesh.faces.len());
    let before = MeshStats::of_mesh(mesh, 0);

    let mut heap: BinaryHeap<std::cmp::Reverse<Entry<S>>> = BinaryHeap::new();
    let push_all = |dec: &Decimator<S>, heap: &mut BinaryHeap<std::cmp::Reverse<Entry<S>>>| {
        let mut pushed = 0usize;
        for (a, b) in dec.live_edges() {
            if let Some(cand) = dec.evaluate_edge(a, b) {
                heap.push(std::cmp::Reverse(dec.entry(cand)));
                pushed += 1;
            }
        }
        pushed
    };
    push_all(&dec, &mut heap);

    let mut collapses = 0usize;
    let mut total_cost = 0.0f64;
    while dec.live_faces > target {
        let Some(std::cmp::Reverse(entry)) = heap.pop() else {
            // collapses elsewhere can legalize edges rejected earlier;
            // rebuild once, and stop only if nothing is legal now
            if push_all(&dec, &mut heap) == 0 {
                break;
            }
            continue;
        };
        if dec.versions[entry.a as usize] != entry.va
            || dec.versions[entry.b as usize] != entry.vb
        {
            continue;
        }
        let Some(fresh) = dec.evaluate_edge(entry.a, entry.b) else {
            continue;
        };
        if fresh.cost != entry.cost || fresh.position != entry.position || fresh.uv != entry.uv {
            heap.push(std::cmp::Reverse(dec.entry(fresh)));
            continue;
        }
        total_cost += fresh.cost.to_f64_lossy();
        dec.apply(&fresh);
        collapses += 1;
        for (a, b) in dec.refresh_edges(fresh.a) {
            if let Some(cand) = dec.evaluate_edge(a, b) {
                heap.push(std::cmp::Reverse(dec.entry(cand)));
            }
        }
    }

    let target_reached = dec.live_faces <= target;
    let out = dec.into_mesh();
    let after = MeshStats::of_mesh(&out, 0);
    Ok((
        out,
        SimplifySummary {
            before,
            after,
            target_faces: target,
            target_reached,
            collapses,
            total_cost,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::HeightField;
    use crate::terrain::{self, DiagonalRule};

    fn flat_field(n: usize, cellsize: f64) -> HeightField<f64> {
        HeightField {
            ncols: n,
            nrows: n,
            xll: 0.0,
            yll: 0.0,
            cellsize,
            nodata: -9999.0,
            values: vec![0.0; n * n],
        }
    }

    fn bumpy_field(n: usize) -> HeightField<f64> {
        // deterministic ripple, no randomness needed
        let values = (0..n * n)
            .map(|i| {
                let (r, c) = (i / n, i % n);
                ((r as f64) * 0.7).sin() * 3.0 + ((c as f64) * 1.3).cos() * 2.0
            })
            .collect();
        HeightField {
            ncols: n,
            nrows: n,
            xll: 0.0,
            yll: 0.0,
            cellsize: 1.0,
            nodata: -9999.0,
            values,
        }
    }

    fn octahedron() -> TriMesh<f64> {
        TriMesh::new(
            vec![
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(-1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(0.0, -1.0, 0.0),
                Vec3::new(0.0, 0.0, 1.0),
                Vec3::new(0.0, 0.0, -1.0),
            ],
            vec![
                [0, 2, 4],
                [2, 1, 4],
                [1, 3, 4],
                [3, 0, 4],
                [2, 0, 5],
                [1, 2, 5],
                [3, 1, 5],
                [0, 3, 5],
            ],
        )
    }

    /// Loop-style midpoint subdivision: each face becomes four.
    fn subdivide(mesh: &TriMesh<f64>) -> TriMesh<f64> {
        let mut positions = mesh.positions.clone();
        let mut midpoints: Vec<((u32, u32), u32)> = Vec::new();
        let mut faces = Vec::new();
        let mut midpoint = |positions: &mut Vec<Vec3<f64>>, a: u32, b: u32| {
            let key = if a < b { (a, b) } else { (b, a) };
            if let Some(&(_, m)) = midpoints.iter().find(|&&(k, _)| k == key) {
                return m;
            }
            let m = positions.len() as u32;
            positions.push((positions[a as usize] + positions[b as usize]) * 0.5);
            midpoints.push((key, m));
            m
        };
        for &[a, b, c] in &mesh.faces {
            let ab = midpoint(&mut positions, a, b);
            let bc = midpoint(&mut positions, b, c);
            let ca = midpoint(&mut positions, c, a);
            faces.extend_from_slice(&[[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        TriMesh::new(positions, faces)
    }

    #[test]
    fn quality_of_reference_shapes() {
        let eq = triangle_quality(
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.5, 3.0f64.sqrt() / 2.0, 0.0),
        );
        assert!((eq - 1.0).abs() < 1e-12);
        let line = triangle_quality(
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(2.0, 2.0, 2.0),
        );
        assert_eq!(line, 0.0);
        let right = triangle_quality(
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        );
        assert!((right - 3.0f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn placement_singular_fallback_picks_cheapest() {
        let q = Quadric::from_plane(0.0, 0.0, 1.0, 0.0); // plane z=0, area 1
        let (p, cost) = optimal_placement(&q, Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 2.0));
        assert_eq!(p, Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(cost, 1.0);
    }

    #[test]
    fn placement_solves_full_rank_system() {
        let q = Quadric::from_plane(1.0, 0.0, 0.0, 0.0)
            + Quadric::from_plane(0.0, 1.0, 0.0, 0.0)
            + Quadric::from_plane(0.0, 0.0, 1.0, 0.0);
        let (p, cost) = optimal_placement(&q, Vec3::new(1.0, 1.0, 1.0), Vec3::new(2.0, 0.0, 0.0));
        assert!(p.length() < 1e-12);
        assert!(cost < 1e-12);
    }

    #[test]
    fn placement_of_degenerate_edge_keeps_point() {
        let q: Quadric<f64> = Quadric::from_plane(0.0, 0.0, 1.0, -1.0);
        let v = Vec3::new(4.0, 5.0, 3.0);
        let (p, cost) = optimal_placement(&q, v, v);
        assert_eq!(p, v);
        assert!((cost - 4.0).abs() < 1e-12);
    }

    #[test]
    fn target_at_or_above_face_count_is_noop() {
        let mesh = terrain::generate(&bumpy_field(5), 1.0, DiagonalRule::FixedNwSe).unwrap();
        let (out, summary) =
            simplify(&mesh, &SimplifyParams::with_target_faces(mesh.face_count())).unwrap();
        assert_eq!(out, mesh);
        assert!(summary.target_reached);
        assert_eq!(summary.collapses, 0);
        let (out2, _) = simplify(&mesh, &SimplifyParams::with_target_ratio(1.0)).unwrap();
        assert_eq!(out2, mesh);
    }

    #[test]
    fn flat_grid_stays_exactly_planar() {
        // a moderate target leaves zero-cost collapses available the
        // whole way; crushing further would have to pay for corners
        let mesh = terrain::generate(&flat_field(5, 1.0), 1.0, DiagonalRule::FixedNwSe).unwrap();
        assert_eq!(mesh.face_count(), 32);
        let (out, summary) = simplify(&mesh, &SimplifyParams::with_target_faces(8)).unwrap();
        assert!(out.positions.iter().all(|p| p.z == 0.0), "z must stay 0");
        assert!(out.face_count() <= 8, "got {} faces", out.face_count());
        assert!(summary.total_cost <= 1e-9, "cost {}", summary.total_cost);
        assert!(out.validate().is_valid());
        // boundary vertices stay on the square outline
        for &(u, v) in &out.boundary_edges() {
            for p in [out.positions[u as usize], out.positions[v as usize]] {
                let on_rim = p.x.min(p.y) < 1e-9 || p.x.max(p.y) > 4.0 - 1e-9;
                assert!(on_rim, "{p:?} left the perimeter");
            }
        }
    }

    #[test]
    fn ripple_reaches_moderate_target() {
        let mesh = terrain::generate(&bumpy_field(9), 1.0, DiagonalRule::FixedNwSe).unwrap();
        let (out, summary) = simplify(&mesh, &SimplifyParams::with_target_ratio(0.4)).unwrap();
        assert!(summary.target_reached);
        assert!(out.face_count() <= summary.target_faces);
        assert!(out.validate().is_valid());
        assert_eq!(summary.before.face_count, 128);
        assert_eq!(summary.after.face_count, out.face_count());
    }

    #[test]
    fn runs_are_deterministic() {
        let mesh = terrain::generate(&bumpy_field(9), 1.0, DiagonalRule::FixedNwSe).unwrap();
        let params = SimplifyParams::with_target_ratio(0.3);
        let (a, sa) = simplify(&mesh, &params).unwrap();
        let (b, sb) = simplify(&mesh, &params).unwrap();
        assert_eq!(a, b);
        assert_eq!(sa, sb);
    }

    #[test]
    fn closed_surface_keeps_its_topology() {
        let mesh = subdivide(&octahedron());
        assert_eq!(mesh.face_count(), 32);
        let (out, summary) = simplify(&mesh, &SimplifyParams::with_target_faces(8)).unwrap();
        assert!(summary.target_reached);
        assert!(out.boundary_edges().is_empty());
        assert_eq!(Adjacency::new(&out).euler_characteristic(), 2);
        assert!(out.validate().is_valid());
    }

    #[test]
    fn tetrahedron_cannot_shrink() {
        let tetra = TriMesh::new(
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(0.0, 0.0, 1.0),
            ],
            vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]],
        );
        let (out, summary) = simplify(&tetra, &SimplifyParams::with_target_faces(1)).unwrap();
        assert!(!summary.target_reached);
        assert_eq!(out.face_count(), 4);
        assert_eq!(out, tetra);
    }

    #[test]
    fn collapse_costs_are_non_negative() {
        let mesh = terrain::generate(&bumpy_field(7), 1.0, DiagonalRule::FixedNwSe).unwrap();
        let dec = Decimator::new(&mesh, SimplifyParams::with_target_faces(1)).unwrap();
        for (a, b) in dec.live_edges() {
            if let Some(c) = dec.evaluate_edge(a, b) {
                assert!(c.cost >= 0.0);
            }
        }
    }

    #[test]
    fn bad_params_rejected() {
        let mesh = octahedron();
        for params in [
            SimplifyParams::with_target_faces(0),
            SimplifyParams::with_target_ratio(0.0),
            SimplifyParams::with_target_ratio(1.5),
            SimplifyParams {
                quality_threshold: -0.1,
                ..SimplifyParams::with_target_faces(4)
            },
            SimplifyParams {
                boundary_weight: 0.0,
                ..SimplifyParams::with_target_faces(4)
            },
            SimplifyParams {
                planar_weight: -1.0,
                ..SimplifyParams::with_target_faces(4)
            },
        ] {
            assert!(matches!(
                simplify(&mesh, &params),
                Err(SimplifyError::InvalidParams(_))
            ));
        }
    }

    #[test]
    fn out_of_range_face_rejected() {
        let mut mesh = octahedron();
        mesh.faces.push([0, 1, 99]);
        assert!(matches!(
            simplify(&mesh, &SimplifyParams::with_target_faces(4)),
            Err(SimplifyError::InvalidMesh(_))
        ));
    }

    #[test]
    fn boundary_endpoint_pins_mixed_collapse() {
        // 1D ridge: boundary vertex 0 and interior vertex 4 of a fan
        let mesh = terrain::generate(&flat_field(3, 1.0), 1.0, DiagonalRule::FixedNwSe).unwrap();
        let dec = Decimator::new(&mesh, SimplifyParams::with_target_faces(1)).unwrap();
        // vertex 4 is the grid centre (interior); vertex 1 is a boundary
        // edge midpoint
        let cand = dec.evaluate_edge(1, 4).expect("mixed edge must be legal");
        assert_eq!(cand.position, mesh.positions[1]);
    }

    #[test]
    fn uv_of_merged_vertex_interpolates() {
        let mesh = terrain::generate(&flat_field(3, 1.0), 1.0, DiagonalRule::FixedNwSe).unwrap();
        let (out, _) = simplify(&mesh, &SimplifyParams::with_target_ratio(0.5)).unwrap();
        let uvs = out.uvs.as_ref().unwrap();
        assert_eq!(uvs.len(), out.vertex_count());
        assert!(uvs.iter().all(|t| t.in_unit_square()));
    }
}
