//! Real scalar abstraction for the numeric core.

use std::fmt::{Debug, Display};

use num_traits::Float;

/// Real scalar type the core math is generic over (`f32`, `f64`).
pub trait Scalar: Float + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` constant into the scalar type.
    ///
    /// Panics if the value is not representable, which cannot happen for the
    /// finite literals used throughout this crate.
    fn lit(value: f64) -> Self {
        Self::from(value).expect("finite literal must convert")
    }

    fn two() -> Self {
        Self::lit(2.0)
    }

    fn half() -> Self {
        Self::lit(0.5)
    }

    fn quarter() -> Self {
        Self::lit(0.25)
    }

    fn pi() -> Self {
        Self::lit(std::f64::consts::PI)
    }
}

impl<T> Scalar for T where T: Float + Debug + Display + Send + Sync + 'static {}
