//! Class-count space: the `(m1 + 1) x (m2 + 1)` grid a subgroup's class
//! counts can refine to, and the score surfaces over it.
//!
//! A grid point `(i1, i2)` stands for the best refinement of the subgroup
//! with exactly `i1` class-1 and `i2` class-2 items, namely the one keeping
//! the per-class items with the largest targets. All surfaces are exact for
//! that witness subset and computable in `O(1)` from the view's prefix sums.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::selection::SubgroupView;

/// One point of the class-count grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CcsPoint {
    /// Class-1 item count.
    pub i1: usize,
    /// Class-2 item count.
    pub i2: usize,
}

impl CcsPoint {
    /// Point constructor.
    pub fn new(i1: usize, i2: usize) -> Self {
        CcsPoint { i1, i2 }
    }

    /// Total item count `i1 + i2`.
    pub fn total(&self) -> usize {
        self.i1 + self.i2
    }
}

fn check_bounds<T: Scalar>(view: &SubgroupView<T>, point: CcsPoint) -> Result<()> {
    let (m1, m2) = (view.class_count(1), view.class_count(2));
    if point.i1 > m1 || point.i2 > m2 {
        return Err(Error::OutOfBounds { i1: point.i1, i2: point.i2, m1, m2 });
    }
    Ok(())
}

/// The refinement attaining the maximum impact among all refinements with
/// the given class counts: the `i1` class-1 and `i2` class-2 items of the
/// view with the largest targets. Returned as population item positions in
/// target-descending (ascending-position) order.
pub fn equi_count_optimum<T: Scalar>(view: &SubgroupView<T>, point: CcsPoint) -> Result<Vec<usize>> {
    check_bounds(view, point)?;
    if point.total() == 0 {
        return Err(Error::ZeroPoint);
    }
    // Per-class item lists ascend by population position, which is
    // target-descending order, so the first i_c entries are the winners.
    let a = &view.class_items[0][..point.i1];
    let b = &view.class_items[1][..point.i2];
    let mut merged = Vec::with_capacity(point.total());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y >= b.len() || (x < a.len() && a[x] < b[y]) {
            merged.push(a[x]);
            x += 1;
        } else {
            merged.push(b[y]);
            y += 1;
        }
    }
    Ok(merged)
}

/// Impact (coverage times central tendency) of a grid point's optimal
/// refinement: `(S1[i1] + S2[i2] - mean_P * (i1 + i2)) / D`, where `S_c[i]`
/// is the sum of the `i` largest class-`c` targets of the subgroup and
/// `D = |P| * (max_P - mean_P)`. Zero at the origin; constant time.
pub fn covcent_ccs<T: Scalar>(view: &SubgroupView<T>, point: CcsPoint) -> Result<T> {
    check_bounds(view, point)?;
    let sum = view.prefix[0][point.i1] + view.prefix[1][point.i2];
    Ok((sum - T::from_count(point.total()) * view.mean_y) / view.d)
}

/// Representativeness of a grid point against a balanced population:
/// `1 - |1 - 2 * i1 / (i1 + i2)|`, which is 1 exactly on the diagonal.
///
/// Only valid when the population classes are equally frequent; the origin
/// has no class distribution and is rejected.
pub fn repr_ccs<T: Scalar>(point: CcsPoint) -> Result<T> {
    if point.total() == 0 {
        return Err(Error::ZeroPoint);
    }
    let two = T::from_f64(2.0);
    let ratio = T::from_count(point.i1) / T::from_count(point.total());
    let raw = T::one() - (T::one() - two * ratio).abs();
    Ok(raw.max(T::zero()).min(T::one()))
}

/// Controlled impact surface over the class-count grid of a balanced
/// population: `max(0, covcent)^(1-a) * repr^a`, with a negative-infinity
/// sentinel at the origin so the empty point never wins an argmax. At
/// `a = 0` the value is `max(0, covcent)` exactly.
pub fn f_ccs<T: Scalar>(view: &SubgroupView<T>, point: CcsPoint, a: T) -> Result<T> {
    check_bounds(view, point)?;
    if point.total() == 0 {
        return Ok(T::neg_infinity());
    }
    let pos = covcent_ccs(view, point)?.max(T::zero());
    if a == T::zero() {
        return Ok(pos);
    }
    Ok(pos.powf(T::one() - a) * repr_ccs::<T>(point)?.powf(a))
}

/// Class counts of the `kappa` subgroup items with the largest targets: the
/// optimal coverage-tendency path through the grid. `(0, 0)` at `kappa = 0`;
/// constant time via the view's class prefix array.
pub fn ct_path_point<T: Scalar>(view: &SubgroupView<T>, kappa: usize) -> Result<CcsPoint> {
    if kappa > view.size() {
        return Err(Error::OutOfRange { index: kappa, size: view.size() });
    }
    let (i1, i2) = view.ct_path(kappa);
    Ok(CcsPoint { i1, i2 })
}

/// Outcome of a ternary search: an argmax index, its value, and how many
/// probe rounds the search used (two evaluations per round).
#[derive(Clone, Copy, Debug)]
pub struct TernaryResult<T> {
    /// An argmax index.
    pub index: usize,
    /// The maximum value.
    pub value: T,
    /// Probe rounds performed before the final sweep.
    pub rounds: usize,
}

/// Maximises a unimodal sequence over `lo..=hi` by ternary search.
///
/// Each round probes two interior points and discards the outer third on
/// the side of the smaller probe; on equal probes both outer thirds are
/// discarded, which requires the plateau between equal probes to contain a
/// maximum (true for weakly concave and for strictly positive log-concave
/// sequences, the two shapes arising here). Ranges of at most four indices
/// are swept linearly, lowest index first. The returned value is an exact
/// maximum; the index is an argmax but not necessarily the smallest one.
pub fn ternary_search_max<T, F>(lo: usize, hi: usize, mut eval: F) -> Result<TernaryResult<T>>
where
    T: Scalar,
    F: FnMut(usize) -> T,
{
    if hi < lo {
        return Err(Error::EmptyRange);
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut rounds = 0;
    while hi - lo > 3 {
        // third >= 1, so every branch shrinks the range and the loop ends.
        let third = (hi - lo) / 3;
        let (m1, m2) = (lo + third, hi - third);
        let (v1, v2) = (eval(m1), eval(m2));
        rounds += 1;
        if v1 < v2 {
            lo = m1 + 1;
        } else if v1 > v2 {
            hi = m2 - 1;
        } else {
            lo = m1;
            hi = m2;
        }
    }
    let mut best = TernaryResult { index: lo, value: eval(lo), rounds };
    for i in lo + 1..=hi {
        let v = eval(i);
        if v > best.value {
            best = TernaryResult { index: i, value: v, rounds };
        }
    }
    Ok(best)
}
