//! Floating-point scalar abstraction.

use std::fmt::{Debug, Display};

/// Scalar type the engine is generic over.
///
/// Everything numeric in this crate (targets, scores, bounds) is expressed in
/// `T: Scalar`. The trait is a thin extension of [`num_traits::Float`] with
/// the conversions the mining pipeline needs.
pub trait Scalar: num_traits::Float + Debug + Display + Send + Sync + 'static {
    /// Converts an item count to the scalar type.
    fn from_count(n: usize) -> Self;

    /// Converts a parsed `f64` cell value to the scalar type.
    fn from_f64(v: f64) -> Self;

    /// Converts the scalar to `f64` for reporting.
    fn to_f64(self) -> f64;
}

impl Scalar for f32 {
    fn from_count(n: usize) -> Self {
        n as f32
    }

    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn to_f64(self) -> f64 {
        f64::from(self)
    }
}

impl Scalar for f64 {
    fn from_count(n: usize) -> Self {
        n as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }
}
