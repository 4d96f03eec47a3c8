//! Error quadrics: symmetric 4x4 forms measuring summed squared
//! point-to-plane distance.

use std::ops::{Add, AddAssign};

use crate::geom::{triangle_cross, Vec3};
use crate::num::Real;

/// Relative determinant cutoff below which the placement system counts
/// as singular.
const SINGULAR_DET_FACTOR: f64 = 1e-10;

/// Upper triangle of a symmetric 4x4 matrix Q. For a homogeneous point
/// p = (x, y, z, 1), `evaluate` returns pᵀQp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadric<S> {
    pub xx: S,
    pub xy: S,
    pub xz: S,
    pub xw: S,
    pub yy: S,
    pub yz: S,
    pub yw: S,
    pub zz: S,
    pub zw: S,
    pub ww: S,
}

impl<S: Real> Quadric<S> {
    pub fn zero() -> Self {
        let z = S::zero();
        Self {
            xx: z,
            xy: z,
            xz: z,
            xw: z,
            yy: z,
            yz: z,
            yw: z,
            zz: z,
            zw: z,
            ww: z,
        }
    }

    /// Quadric of the plane ax+by+cz+d = 0 with (a,b,c) unit length:
    /// Q = (a,b,c,d)(a,b,c,d)ᵀ, so Q(p) is the squared plane distance.
    pub fn from_plane(a: S, b: S, c: S, d: S) -> Self {
        Self {
            xx: a * a,
            xy: a * b,
            xz: a * c,
            xw: a * d,
            yy: b * b,
            yz: b * c,
            yw: b * d,
            zz: c * c,
            zw: c * d,
            ww: d * d,
        }
    }

    /// Plane quadric through `point` with the given unit `normal`.
    pub fn from_point_normal(point: Vec3<S>, normal: Vec3<S>) -> Self {
        let d = -normal.dot(point);
        Self::from_plane(normal.x, normal.y, normal.z, d)
    }

    /// Area-weighted quadric of a triangle's supporting plane. `None`
    /// when the triangle has no area to define a plane with.
    pub fn from_triangle(a: Vec3<S>, b: Vec3<S>, c: Vec3<S>) -> Option<Self> {
        let cross = triangle_cross(a, b, c);
        let normal = cross.normalized()?;
        let area = cross.length() * S::of(0.5);
        Some(Self::from_point_normal(a, normal).scaled(area))
    }

    pub fn scaled(&self, s: S) -> Self {
        Self {
            xx: self.xx * s,
            xy: self.xy * s,
            xz: self.xz * s,
            xw: self.xw * s,
            yy: self.yy * s,
            yz: self.yz * s,
            yw: self.yw * s,
            zz: self.zz * s,
            zw: self.zw * s,
            ww: self.ww * s,
        }
    }

    pub fn evaluate(&self, p: Vec3<S>) -> S {
        let two = S::of(2.0);
        self.xx * p.x * p.x
            + self.yy * p.y * p.y
            + self.zz * p.z * p.z
            + two * (self.xy * p.x * p.y + self.xz * p.x * p.z + self.yz * p.y * p.z)
            + two * (self.xw * p.x + self.yw * p.y + self.zw * p.z)
            + self.ww
    }

    /// Upper-left 3x3 block A applied to `v`.
    pub fn apply_linear(&self, v: Vec3<S>) -> Vec3<S> {
        Vec3::new(
            self.xx * v.x + self.xy * v.y + self.xz * v.z,
            self.xy * v.x + self.yy * v.y + self.yz * v.z,
            self.xz * v.x + self.yz * v.y + self.zz * v.z,
        )
    }

    /// Last column (x, y, z, ·) of the matrix; with `apply_linear` this
    /// gives the gradient: ∇Q(p)/2 = A p + linear_term.
    pub fn linear_term(&self) -> Vec3<S> {
        Vec3::new(self.xw, self.yw, self.zw)
    }

    /// Solves ∇Q = 0 for the minimizing point. `None` when the 3x3
    /// system is singular relative to its own scale, in which case the
    /// caller falls back to candidate points.
    pub fn minimizer(&self) -> Option<Vec3<S>> {
        let (a11, a12, a13) = (self.xx, self.xy, self.xz);
        let (a22, a23) = (self.yy, self.yz);
        let a33 = self.zz;
        let det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13)
            + a13 * (a12 * a23 - a22 * a13);
        let scale = [a11, a12, a13, a22, a23, a33]
            .into_iter()
            .fold(S::zero(), |m, v| m.max(v.abs()));
        if scale <= S::zero() || det.abs() < S::of(SINGULAR_DET_FACTOR) * scale * scale * scale {
            return None;
        }
        // Cramer's rule on A v = -b with b = (xw, yw, zw)
        let (b1, b2, b3) = (-self.xw, -self.yw, -self.zw);
        let x = (b1 * (a22 * a33 - a23 * a23) - a12 * (b2 * a33 - a23 * b3)
            + a13 * (b2 * a23 - a22 * b3))
            / det;
        let y = (a11 * (b2 * a33 - a23 * b3) - b1 * (a12 * a33 - a23 * a13)
            + a13 * (a12 * b3 - b2 * a13))
            / det;
        let z = (a11 * (a22 * b3 - b2 * a23) - a12 * (a12 * b3 - b2 * a13)
            + b1 * (a12 * a23 - a22 * a13))
            / det;
        let p = Vec3::new(x, y, z);
        p.is_finite().then_some(p)
    }
}

impl<S: Real> Add for Quadric<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<S: Real> AddAssign for Quadric<S> {
    fn add_assign(&mut self, rhs: Self) {
        self.xx += rhs.xx;
        self.xy += rhs.xy;
        self.xz += rhs.xz;
        self.xw += rhs.xw;
        self.yy += rhs.yy;
        self.yz += rhs.yz;
        self.yw += rhs.yw;
        self.zz += rhs.zz;
        self.zw += rhs.zw;
        self.ww += rhs.ww;
    }
}
