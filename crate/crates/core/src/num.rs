//! Scalar abstraction shared by every signal-processing routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating point sample type: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Default + Sum + Debug + Display
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Default + Sum + Debug + Display
{
}

/// Wraps a phase into `(-pi, pi]`.
#[inline]
pub fn princarg<T: Real>(phase: T) -> T {
    let two_pi = T::TAU();
    let wrapped = phase - two_pi * ((phase + T::PI()) / two_pi).floor();
    // floor maps +pi to -pi; keep the upper end closed
    if wrapped == -T::PI() {
        T::PI()
    } else {
        wrapped
    }
}
