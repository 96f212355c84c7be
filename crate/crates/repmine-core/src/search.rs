//! Best-first branch-and-bound over the selector language: top-k mining
//! with admissible pruning and optional multiplicative approximation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use crate::dataset::Population;
use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind};
use crate::scalar::Scalar;
use crate::scores::{breakdown, ScoreBreakdown};
use crate::selection::{extension, refine, Proposition, Selector, SubgroupView};

/// Mining parameters.
#[derive(Clone, Debug)]
pub struct MineConfig<T> {
    /// Balance weight `a` of the controlled impact function, in `[0, 1)`.
    pub weight: T,
    /// How many top subgroups to return.
    pub k: usize,
    /// Approximation factor in `(0, 1]`: results are guaranteed within
    /// `alpha` of the optimum; 1 mines exactly.
    pub alpha: T,
    /// Maximum conjunction length.
    pub max_depth: usize,
    /// Optimistic estimator used for pruning.
    pub estimator: EstimatorKind,
    /// Hard cap on expanded nodes; exhaustion is flagged in the stats.
    pub node_budget: usize,
}

/// One mined subgroup.
#[derive(Clone, Debug)]
pub struct ResultEntry<T> {
    /// Rendered conjunction.
    pub descriptor: String,
    /// Full score breakdown at the configured weight.
    pub scores: ScoreBreakdown<T>,
    /// Class-1 item count.
    pub m1: usize,
    /// Class-2 item count.
    pub m2: usize,
    /// Subgroup size.
    pub size: usize,
}

/// Search effort counters.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Nodes popped and processed.
    pub nodes_expanded: usize,
    /// Nodes discarded: empty extensions, bound-pruned children, and
    /// queued nodes whose bound fell behind the incumbent before their turn.
    pub nodes_pruned: usize,
    /// Optimistic-estimator invocations.
    pub estimator_calls: usize,
    /// Controlled-impact surface evaluations across all estimator calls.
    pub fccs_evals: usize,
    /// Wall-clock time of the mining loop.
    pub wall: Duration,
    /// True when the loop stopped because the node budget ran out.
    pub budget_exhausted: bool,
}

/// A queued candidate: its selector, materialised extension, and the
/// optimistic bound on every refinement.
struct QueueNode<T> {
    bound: T,
    depth: usize,
    selector: Selector,
    view: SubgroupView<T>,
}

impl<T: Scalar> QueueNode<T> {
    /// Queue priority: larger bound first, then shallower depth, then
    /// lexicographically smaller proposition indices. Total and
    /// deterministic (bounds are never NaN).
    fn priority(&self, other: &Self) -> Ordering {
        self.bound
            .partial_cmp(&other.bound)
            .expect("estimator bounds are never NaN")
            .then_with(|| other.depth.cmp(&self.depth))
            .then_with(|| other.selector.indices.cmp(&self.selector.indices))
    }
}

impl<T: Scalar> Ord for QueueNode<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority(other)
    }
}

impl<T: Scalar> PartialOrd for QueueNode<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> PartialEq for QueueNode<T> {
    fn eq(&self, other: &Self) -> bool {
        self.priority(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for QueueNode<T> {}

/// Bounded result list ordered by score descending, ties broken by
/// lexicographically smaller descriptor. Shared by the search and the
/// brute-force reference so both break ties identically.
pub(crate) struct TopK<T> {
    entries: Vec<ResultEntry<T>>,
    k: usize,
}

impl<T: Scalar> TopK<T> {
    pub(crate) fn new(k: usize) -> Self {
        TopK { entries: Vec::with_capacity(k + 1), k }
    }

    /// The k-th best score so far; negative infinity until k entries exist.
    pub(crate) fn threshold(&self) -> T {
        if self.entries.len() < self.k {
            T::neg_infinity()
        } else {
            self.entries.last().unwrap().scores.f
        }
    }

    pub(crate) fn insert(&mut self, entry: ResultEntry<T>) {
        let pos = self
            .entries
            .partition_point(|e| match entry.scores.f.partial_cmp(&e.scores.f).unwrap() {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => e.descriptor <= entry.descriptor,
            });
        self.entries.insert(pos, entry);
        self.entries.truncate(self.k);
    }

    pub(crate) fn into_entries(self) -> Vec<ResultEntry<T>> {
        self.entries
    }
}

fn make_entry<T: Scalar>(descriptor: String, view: &SubgroupView<T>, a: T) -> Result<ResultEntry<T>> {
    Ok(ResultEntry {
        descriptor,
        scores: breakdown(view, a)?,
        m1: view.class_count(1),
        m2: view.class_count(2),
        size: view.size(),
    })
}

/// Mines the `k` best non-root subgroup descriptions by best-first
/// branch-and-bound.
///
/// Nodes are expanded in order of decreasing optimistic bound; a child is
/// enqueued only when `alpha * bound` exceeds the current k-th best score,
/// and the comparison is re-checked when the node is popped. Children with
/// empty extensions are discarded. With `alpha = 1` the returned values are
/// the exact language optimum; with `alpha < 1` the top value is guaranteed
/// to be at least `alpha` times the optimum.
pub fn mine_topk<T: Scalar>(
    population: &Population<T>,
    language: &[Proposition],
    config: &MineConfig<T>,
) -> Result<(Vec<ResultEntry<T>>, SearchStats)> {
    if config.k == 0 {
        return Err(Error::InvalidConfig("top-k count must be at least 1".to_string()));
    }
    if !(config.weight >= T::zero() && config.weight < T::one()) {
        return Err(Error::WeightOutOfRange(config.weight.to_f64()));
    }
    if !(config.alpha > T::zero() && config.alpha <= T::one()) {
        return Err(Error::AlphaOutOfRange(config.alpha.to_f64()));
    }
    if config.estimator == EstimatorKind::Rawr && !population.balanced() {
        return Err(Error::UnbalancedPopulation);
    }

    let start = Instant::now();
    let a = config.weight;
    let mut stats = SearchStats::default();
    let mut top = TopK::new(config.k);
    let mut queue: BinaryHeap<QueueNode<T>> = BinaryHeap::new();
    // The root's bound is trivially maximal; it is expanded unconditionally
    // and never scored (the empty conjunction carries no information).
    queue.push(QueueNode {
        bound: T::infinity(),
        depth: 0,
        selector: Selector::root(),
        view: extension(&Selector::root(), language, population),
    });

    while let Some(node) = queue.pop() {
        if stats.nodes_expanded >= config.node_budget {
            stats.budget_exhausted = true;
            break;
        }
        // The incumbent may have improved since this node was enqueued.
        if node.depth > 0 && config.alpha * node.bound <= top.threshold() {
            stats.nodes_pruned += 1;
            continue;
        }
        stats.nodes_expanded += 1;
        if node.depth > 0 {
            top.insert(make_entry(node.selector.render(language), &node.view, a)?);
        }
        for index in refine(&node.selector, language, config.max_depth) {
            let child_view = node.view.filter(population, &language[index]);
            if child_view.is_empty() {
                stats.nodes_pruned += 1;
                continue;
            }
            let (bound, call) = estimate(config.estimator, &child_view, population, a)?;
            stats.estimator_calls += 1;
            stats.fccs_evals += call.fccs_evals;
            if config.alpha * bound <= top.threshold() {
                stats.nodes_pruned += 1;
                continue;
            }
            queue.push(QueueNode {
                bound,
                depth: node.depth + 1,
                selector: node.selector.child(index),
                view: child_view,
            });
        }
    }

    stats.wall = start.elapsed();
    Ok((top.into_entries(), stats))
}
