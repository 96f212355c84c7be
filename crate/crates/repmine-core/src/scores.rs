//! Quality scores: coverage, central tendency, impact, representativeness,
//! and the controlled impact function that combines them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::selection::SubgroupView;

/// Every score of one subgroup, as reported to callers.
#[derive(Clone, Debug, Serialize)]
pub struct ScoreBreakdown<T> {
    /// Subgroup fraction of the population, `|Q| / |P|`.
    pub coverage: T,
    /// Normalised mean shift `(mean_Q - mean_P) / (max_P - mean_P)`.
    pub tendency: T,
    /// `coverage * tendency`.
    pub covcent: T,
    /// Representativeness `1 - tvd / d_max`, in `[0, 1]`.
    pub repr: T,
    /// Controlled impact `max(0, covcent)^(1-a) * repr^a`.
    pub f: T,
    /// The balance weight `a` the score was computed with.
    pub weight: T,
}

/// Subgroup fraction of the population; 0 for an empty view.
pub fn coverage<T: Scalar>(view: &SubgroupView<T>) -> T {
    T::from_count(view.size()) / T::from_count(view.pop_n)
}

/// Mean shift of the subgroup target, normalised so a unique maximum item
/// scores 1: `(mean_Q - mean_P) / (max_P - mean_P)`. May be negative.
pub fn central_tendency<T: Scalar>(view: &SubgroupView<T>) -> Result<T> {
    if view.is_empty() {
        return Err(Error::EmptySubgroup);
    }
    let mean_q = view.sum_y() / T::from_count(view.size());
    // d = |P| * (max_P - mean_P), so max_P - mean_P = d / |P|.
    Ok((mean_q - view.mean_y) / (view.d / T::from_count(view.pop_n)))
}

/// Coverage times central tendency, which telescopes to
/// `(sum_Q y - |Q| * mean_P) / (|P| * (max_P - mean_P))`; 0 for an empty
/// view by convention.
pub fn impact<T: Scalar>(view: &SubgroupView<T>) -> T {
    (view.sum_y() - T::from_count(view.size()) * view.mean_y) / view.d
}

/// Total variation distance between two distributions over two classes,
/// `(|p1 - q1| + |p2 - q2|) / 2`.
///
/// Each pair must be a probability vector: non-negative, summing to 1 up to
/// float error.
pub fn tvd<T: Scalar>(p: [T; 2], q: [T; 2]) -> Result<T> {
    let half = T::from_f64(0.5);
    let tol = T::epsilon().sqrt();
    for pair in [p, q] {
        let sum = pair[0] + pair[1];
        if pair[0] < T::zero() || pair[1] < T::zero() || (sum - T::one()).abs() > tol {
            return Err(Error::NotAProbabilityVector(pair[0].to_f64(), pair[1].to_f64()));
        }
    }
    Ok(half * ((p[0] - q[0]).abs() + (p[1] - q[1]).abs()))
}

/// Class distribution of a non-empty view.
fn class_probs<T: Scalar>(view: &SubgroupView<T>) -> [T; 2] {
    let size = T::from_count(view.size());
    [
        T::from_count(view.class_count(1)) / size,
        T::from_count(view.class_count(2)) / size,
    ]
}

/// Representativeness of a subgroup's class distribution against the
/// population's: `1 - tvd / d_max`, where `d_max` is the largest distance
/// any non-empty subset can attain. 1 iff the distributions agree; clamped
/// to `[0, 1]` against float error.
pub fn representativeness<T: Scalar>(view: &SubgroupView<T>) -> Result<T> {
    if view.is_empty() {
        return Err(Error::EmptySubgroup);
    }
    let raw = T::one() - tvd(view.pop_probs, class_probs(view))? / view.d_max;
    Ok(raw.max(T::zero()).min(T::one()))
}

/// Controlled impact from its two factors:
/// `max(0, covcent)^(1-a) * repr^a` with balance weight `a` in `[0, 1)`.
///
/// At `a = 0` this returns `max(0, covcent)` exactly, with no powering.
pub fn controlled_impact_raw<T: Scalar>(covcent: T, repr: T, a: T) -> Result<T> {
    if !(a >= T::zero() && a < T::one()) {
        return Err(Error::WeightOutOfRange(a.to_f64()));
    }
    let pos = covcent.max(T::zero());
    if a == T::zero() {
        return Ok(pos);
    }
    Ok(pos.powf(T::one() - a) * repr.powf(a))
}

/// Controlled impact of a subgroup at balance weight `a`.
pub fn controlled_impact<T: Scalar>(view: &SubgroupView<T>, a: T) -> Result<T> {
    controlled_impact_raw(impact(view), representativeness(view)?, a)
}

/// Computes every score of a non-empty subgroup at balance weight `a`.
pub fn breakdown<T: Scalar>(view: &SubgroupView<T>, a: T) -> Result<ScoreBreakdown<T>> {
    let covcent = impact(view);
    let repr = representativeness(view)?;
    Ok(ScoreBreakdown {
        coverage: coverage(view),
        tendency: central_tendency(view)?,
        covcent,
        repr,
        f: controlled_impact_raw(covcent, repr, a)?,
        weight: a,
    })
}
