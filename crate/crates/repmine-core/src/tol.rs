//! Numeric comparison tolerances shared by the library and its test suites.

use crate::scalar::Scalar;

/// Relative tolerance for score and bound comparisons.
pub const REL_TOL: f64 = 1e-9;

/// Absolute tolerance for score and bound comparisons.
pub const ABS_TOL: f64 = 1e-12;

/// Returns `true` when `a` and `b` agree within the crate tolerances:
/// `|a - b| <= max(ABS_TOL, REL_TOL * max(|a|, |b|))`.
pub fn approx_eq<T: Scalar>(a: T, b: T) -> bool {
    let diff = (a - b).abs();
    let scale = a.abs().max(b.abs());
    let rel = T::from_f64(REL_TOL) * scale;
    diff <= T::from_f64(ABS_TOL).max(rel)
}

/// Returns `true` when `a <= b` up to the crate tolerances.
pub fn approx_le<T: Scalar>(a: T, b: T) -> bool {
    a <= b || approx_eq(a, b)
}
