//! Scalar abstraction: every geometric module is generic over the
//! floating-point type.

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar (f32 or f64) the geometry is generic over.
pub trait Real:
    Float + NumAssign + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + 'static
{
    /// Lossy conversion from a literal. Panics only for values a float
    /// cannot represent at all, which none of our constants are.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("constant representable in scalar type")
    }

    /// Conversion to f64 for text formatting and reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
