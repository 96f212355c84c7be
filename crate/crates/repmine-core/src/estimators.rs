//! Optimistic estimators: upper bounds on the controlled impact of every
//! non-empty refinement of a subgroup, used by the search for pruning.
//!
//! Three are provided: `naive` scans the whole class-count grid (exact but
//! quadratic), `brig` bounds only the impact factor and fixes
//! representativeness at 1 (linear but loose), and `rawr` restricts the scan
//! to a sufficient triangle of the grid and ternary-searches each row
//! (linearithmic and exact).

use std::fmt;
use std::str::FromStr;

use crate::ccs::{covcent_ccs, f_ccs, ternary_search_max, CcsPoint};
use crate::dataset::Population;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::selection::SubgroupView;

/// Which optimistic estimator the search uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimatorKind {
    /// Full class-count-grid scan; exact tight bound, quadratic.
    Naive,
    /// Best-impact bound with representativeness fixed at 1; linear, not
    /// tight for weights above 0.
    Brig,
    /// Sufficient-triangle scan with per-row ternary search; exact tight
    /// bound, linearithmic. Requires a balanced population.
    Rawr,
}

impl EstimatorKind {
    /// All kinds, in documentation order.
    pub const ALL: [EstimatorKind; 3] = [EstimatorKind::Naive, EstimatorKind::Brig, EstimatorKind::Rawr];
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EstimatorKind::Naive => "naive",
            EstimatorKind::Brig => "brig",
            EstimatorKind::Rawr => "rawr",
        };
        f.write_str(name)
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(EstimatorKind::Naive),
            "brig" => Ok(EstimatorKind::Brig),
            "rawr" => Ok(EstimatorKind::Rawr),
            other => Err(Error::InvalidConfig(format!(
                "unknown estimator `{other}` (expected naive, brig, or rawr)"
            ))),
        }
    }
}

/// Instrumentation record of one estimator call.
#[derive(Clone, Copy, Debug)]
pub struct EstimatorCall {
    /// Which estimator ran.
    pub kind: EstimatorKind,
    /// Number of controlled-impact surface evaluations.
    pub fccs_evals: usize,
    /// Total ternary-search probe rounds.
    pub ternary_rounds: usize,
}

impl EstimatorCall {
    fn new(kind: EstimatorKind) -> Self {
        EstimatorCall { kind, fccs_evals: 0, ternary_rounds: 0 }
    }
}

fn check_common<T: Scalar>(view: &SubgroupView<T>, a: T) -> Result<()> {
    if view.is_empty() {
        return Err(Error::EmptySubgroup);
    }
    if !(a >= T::zero() && a < T::one()) {
        return Err(Error::WeightOutOfRange(a.to_f64()));
    }
    Ok(())
}

/// Runs the chosen estimator; see [`naive_oest`], [`brig_oest`],
/// [`rawr_oest`].
pub fn estimate<T: Scalar>(
    kind: EstimatorKind,
    view: &SubgroupView<T>,
    population: &Population<T>,
    a: T,
) -> Result<(T, EstimatorCall)> {
    match kind {
        EstimatorKind::Naive => naive_oest(view, population, a),
        EstimatorKind::Brig => brig_oest(view, population, a),
        EstimatorKind::Rawr => rawr_oest(view, population, a),
    }
}

/// Exact tight bound by scanning every non-origin class-count grid point.
///
/// Quadratic in the subgroup's class counts; the reference the fast
/// estimator is tested against. Balanced populations only (the grid's
/// representativeness surface assumes equal class frequencies).
pub fn naive_oest<T: Scalar>(
    view: &SubgroupView<T>,
    population: &Population<T>,
    a: T,
) -> Result<(T, EstimatorCall)> {
    check_common(view, a)?;
    if !population.balanced() {
        return Err(Error::UnbalancedPopulation);
    }
    let mut call = EstimatorCall::new(EstimatorKind::Naive);
    let (m1, m2) = (view.class_count(1), view.class_count(2));
    let mut best = T::zero();
    for i1 in 0..=m1 {
        for i2 in 0..=m2 {
            if i1 == 0 && i2 == 0 {
                continue;
            }
            call.fccs_evals += 1;
            best = best.max(f_ccs(view, CcsPoint::new(i1, i2), a)?);
        }
    }
    Ok((best, call))
}

/// Class counts of the subgroup items at or above the population mean: the
/// grid point maximising the impact surface.
fn above_mean_point<T: Scalar>(view: &SubgroupView<T>) -> CcsPoint {
    // Per-class target lists are descending, so the at-or-above-mean items
    // form a prefix.
    let b1 = view.class_targets[0].partition_point(|&y| y >= view.mean_y);
    let b2 = view.class_targets[1].partition_point(|&y| y >= view.mean_y);
    CcsPoint::new(b1, b2)
}

/// Linear-time bound oblivious to the control variable: the best impact any
/// refinement can reach (attained by the items at or above the population
/// mean), with representativeness bounded by 1:
/// `max(0, impact)^(1-a)`. Valid for unbalanced populations too; not tight
/// for `a > 0`.
pub fn brig_oest<T: Scalar>(
    view: &SubgroupView<T>,
    _population: &Population<T>,
    a: T,
) -> Result<(T, EstimatorCall)> {
    check_common(view, a)?;
    let call = EstimatorCall::new(EstimatorKind::Brig);
    let best = covcent_ccs(view, above_mean_point(view))?.max(T::zero());
    if a == T::zero() {
        return Ok((best, call));
    }
    Ok((best.powf(T::one() - a), call))
}

/// Exact tight bound in `O((m1 + m2) log(m1 + m2))` surface evaluations.
///
/// The search space is cut down in two proven steps. First the optimal
/// coverage-tendency point `G* = (g1, g2)` — the class counts of the
/// smallest top-target prefix maximising the impact surface — is found by
/// ternary search along the path of top-target prefixes (a weakly concave
/// sequence). The maximiser of the full surface then lies in the filled
/// triangle spanned by `G*` and its diagonal projections `(g1, g1)` and
/// `(g2, g2)`, so only that triangle's rows (columns, when `g1 > g2`) are
/// searched, each restricted to its positive-impact prefix where the
/// surface is strictly log-concave and ternary search is exact.
pub fn rawr_oest<T: Scalar>(
    view: &SubgroupView<T>,
    population: &Population<T>,
    a: T,
) -> Result<(T, EstimatorCall)> {
    check_common(view, a)?;
    if !population.balanced() {
        return Err(Error::UnbalancedPopulation);
    }
    let mut call = EstimatorCall::new(EstimatorKind::Rawr);

    // Weight 0 drops the representativeness factor; the bound collapses to
    // the plain impact maximum, the same point brig evaluates.
    if a == T::zero() {
        let best = covcent_ccs(view, above_mean_point(view))?.max(T::zero());
        return Ok((best, call));
    }

    let n = view.size();
    let (m1, m2) = (view.class_count(1), view.class_count(2));
    // Impact along the top-target prefix path, in O(1) per index. Not a
    // surface evaluation: instrumentation counts f_ccs only.
    let path = |kappa: usize| -> T {
        let (i1, i2) = view.ct_path(kappa);
        let sum = view.prefix[0][i1] + view.prefix[1][i2];
        (sum - T::from_count(kappa) * view.mean_y) / view.d
    };

    // Step 1: the optimal coverage-tendency point. The path sequence is
    // weakly concave, so ternary search finds its maximum; the smallest
    // argmax is then pinned by bisecting the non-decreasing prefix.
    let top = ternary_search_max(1, n, path)?;
    call.ternary_rounds += top.rounds;
    if top.value <= T::zero() {
        // No refinement has positive impact; every surface value is 0.
        return Ok((T::zero(), call));
    }
    let (mut lo, mut hi) = (1, top.index);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if path(mid) >= top.value {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (g1, g2) = view.ct_path(lo);

    let covcent = |i1: usize, i2: usize| -> Result<T> { covcent_ccs(view, CcsPoint::new(i1, i2)) };
    let mut best = T::zero();
    let mut scan = |fixed: usize, along: u8, call: &mut EstimatorCall| -> Result<()> {
        // One triangle slice: row `i2 = fixed` scanned along i1, or column
        // `i1 = fixed` scanned along i2. The slice starts at the smaller
        // G* coordinate — the impact surface's peak on the slice — and is
        // clamped to the grid.
        let start = g1.min(g2);
        let end = fixed.min(if along == 1 { m1 } else { m2 });
        let at = |x: usize| if along == 1 { (x, fixed) } else { (fixed, x) };
        let cov_at = |x: usize| -> Result<T> {
            let (i1, i2) = at(x);
            covcent(i1, i2)
        };
        // Impact is non-increasing along the slice; skip slices that never
        // go positive, and shrink the rest to the positive prefix so every
        // scanned value is strictly log-concave (no zero plateaus, where
        // equal ternary probes could discard the maximum).
        if cov_at(start)? <= T::zero() {
            return Ok(());
        }
        let (mut lo, mut hi) = (start, end);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if cov_at(mid)? > T::zero() {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let mut evals = 0usize;
        let found = ternary_search_max(start, lo, |x| {
            evals += 1;
            let (i1, i2) = at(x);
            f_ccs(view, CcsPoint::new(i1, i2), a).expect("slice point is inside the grid")
        })?;
        call.fccs_evals += evals;
        call.ternary_rounds += found.rounds;
        best = best.max(found.value);
        Ok(())
    };

    // Steps 2-3: sweep the triangle's slices. G* class counts come from an
    // actual subgroup prefix, so g1 <= m1 and g2 <= m2 hold already.
    if g1 < g2 {
        for j in g1..=g2 {
            scan(j, 1, &mut call)?;
        }
    } else if g2 < g1 {
        for x in g2..=g1 {
            scan(x, 2, &mut call)?;
        }
    }

    // Step 4: the triangle's vertices, explicitly; projections falling
    // outside the grid are not feasible class counts and are skipped.
    for point in [CcsPoint::new(g1, g2), CcsPoint::new(g1, g1), CcsPoint::new(g2, g2)] {
        if point.total() > 0 && point.i1 <= m1 && point.i2 <= m2 {
            call.fccs_evals += 1;
            best = best.max(f_ccs(view, point, a)?);
        }
    }

    Ok((best, call))
}
