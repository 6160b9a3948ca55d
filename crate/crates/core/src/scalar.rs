//! Scalar abstraction shared by the geometric kernel and the surface code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Stepping to the adjacent representable value, used for outward rounding.
pub trait NextFloat: Copy {
    fn step_up(self) -> Self;
    fn step_down(self) -> Self;
}

impl NextFloat for f64 {
    #[inline]
    fn step_up(self) -> Self {
        self.next_up()
    }
    #[inline]
    fn step_down(self) -> Self {
        self.next_down()
    }
}

impl NextFloat for f32 {
    #[inline]
    fn step_up(self) -> Self {
        self.next_up()
    }
    #[inline]
    fn step_down(self) -> Self {
        self.next_down()
    }
}

/// Real scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + NextFloat + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an f64 literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Conversion to f64 for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
