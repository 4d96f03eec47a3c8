//! Small vector and texture-coordinate types shared by every module.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::num::Real;

/// 3D point or direction. `z` carries elevation for terrain meshes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Real> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn dot(self, rhs: Self) -> S {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn length_squared(self) -> S {
        self.dot(self)
    }

    pub fn length(self) -> S {
        self.length_squared().sqrt()
    }

    pub fn distance(self, rhs: Self) -> S {
        (self - rhs).length()
    }

    /// Unit vector, or `None` when the length is zero.
    pub fn normalized(self) -> Option<Self> {
        let len = self.length();
        if len > S::zero() {
            Some(self / len)
        } else {
            None
        }
    }

    pub fn lerp(self, rhs: Self, t: S) -> Self {
        self + (rhs - self) * t
    }

    pub fn min_components(self, rhs: Self) -> Self {
        Self::new(self.x.min(rhs.x), self.y.min(rhs.y), self.z.min(rhs.z))
    }

    pub fn max_components(self, rhs: Self) -> Self {
        Self::new(self.x.max(rhs.x), self.y.max(rhs.y), self.z.max(rhs.z))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl<S: Real> Add for Vec3<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<S: Real> AddAssign for Vec3<S> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<S: Real> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<S: Real> Mul<S> for Vec3<S> {
    type Output = Self;
    fn mul(self, rhs: S) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl<S: Real> Div<S> for Vec3<S> {
    type Output = Self;
    fn div(self, rhs: S) -> Self {
        Self::new(self.x / rhs, self.y / rhs, self.z / rhs)
    }
}

impl<S: Real> Neg for Vec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Normalized texture coordinate; both components live in [0, 1] for
/// coordinates produced by the terrain generator.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Uv<S> {
    pub u: S,
    pub v: S,
}

impl<S: Real> Uv<S> {
    pub fn new(u: S, v: S) -> Self {
        Self { u, v }
    }

    pub fn lerp(self, rhs: Self, t: S) -> Self {
        Self::new(self.u + (rhs.u - self.u) * t, self.v + (rhs.v - self.v) * t)
    }

    pub fn in_unit_square(self) -> bool {
        self.u >= S::zero() && self.u <= S::one() && self.v >= S::zero() && self.v <= S::one()
    }
}

/// Twice the signed area vector of a triangle; its length is 2 * area.
pub fn triangle_cross<S: Real>(a: Vec3<S>, b: Vec3<S>, c: Vec3<S>) -> Vec3<S> {
    (b - a).cross(c - a)
}

pub fn triangle_area<S: Real>(a: Vec3<S>, b: Vec3<S>, c: Vec3<S>) -> S {
    triangle_cross(a, b, c).length() * S::of(0.5)
}

/// Unit normal by the right-hand rule over `(a, b, c)`, or `None` for a
/// zero-area triangle.
pub fn triangle_normal<S: Real>(a: Vec3<S>, b: Vec3<S>, c: Vec3<S>) -> Option<Vec3<S>> {
    triangle_cross(a, b, c).normalized()
}
