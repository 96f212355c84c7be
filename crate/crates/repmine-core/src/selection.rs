//! Description language and subgroup materialisation.
//!
//! A subgroup description is a conjunction of propositions, each an
//! equality or inequality test on one discretized attribute. A
//! [`SubgroupView`] holds the per-class target lists and prefix sums that
//! scores and optimistic estimators read.

use crate::dataset::{Population, MISSING_CODE};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Test direction of a proposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Polarity {
    /// Attribute equals the code.
    Equals,
    /// Attribute is present and differs from the code.
    NotEquals,
}

/// One atomic test `attribute = value` or `attribute != value`.
///
/// Missing cells match no proposition of either polarity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    /// Position in the global proposition order.
    pub index: usize,
    /// Attribute position in `Population::attributes`.
    pub attr: usize,
    /// Test direction.
    pub polarity: Polarity,
    /// Attribute code being tested.
    pub code: u16,
    /// Rendered form, `Name:Label` or `Name:¬Label`.
    pub label: String,
}

impl Proposition {
    /// Whether an item's code for this attribute satisfies the test.
    pub fn matches(&self, code: u16) -> bool {
        if code == MISSING_CODE {
            return false;
        }
        match self.polarity {
            Polarity::Equals => code == self.code,
            Polarity::NotEquals => code != self.code,
        }
    }
}

/// A conjunction of propositions, stored as strictly increasing indices into
/// the global proposition list; the canonical form that makes search-tree
/// enumeration duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Selector {
    /// Strictly increasing proposition indices.
    pub indices: Vec<usize>,
}

impl Selector {
    /// The empty conjunction, matching every item.
    pub fn root() -> Self {
        Selector { indices: Vec::new() }
    }

    /// Conjunction length.
    pub fn depth(&self) -> usize {
        self.indices.len()
    }

    /// Extends the conjunction with one more proposition index; the index
    /// must exceed the current maximum.
    pub fn child(&self, index: usize) -> Self {
        debug_assert!(self.indices.last().is_none_or(|&last| last < index));
        let mut indices = Vec::with_capacity(self.indices.len() + 1);
        indices.extend_from_slice(&self.indices);
        indices.push(index);
        Selector { indices }
    }

    /// Human-readable form: proposition labels joined by `", "`, or `"⊤"`
    /// for the empty conjunction.
    pub fn render(&self, language: &[Proposition]) -> String {
        if self.indices.is_empty() {
            return "⊤".to_string();
        }
        self.indices
            .iter()
            .map(|&i| language[i].label.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Builds the global proposition list for a population.
///
/// For each descriptive attribute with `b` observed codes this emits `b`
/// equality tests, plus `b` inequality tests when `b > 2` (for two observed
/// codes an inequality duplicates the opposite equality). Order is
/// attribute, then polarity (equalities first), then code.
pub fn generate_propositions<T: Scalar>(population: &Population<T>) -> Vec<Proposition> {
    let mut language = Vec::new();
    for (attr, meta) in population.attributes().iter().enumerate() {
        let observed: Vec<u16> = (0..meta.labels.len() as u16)
            .filter(|&code| {
                population
                    .items()
                    .iter()
                    .any(|item| item.codes[attr] == code)
            })
            .collect();
        for &code in &observed {
            language.push(Proposition {
                index: language.len(),
                attr,
                polarity: Polarity::Equals,
                code,
                label: format!("{}:{}", meta.name, meta.labels[code as usize]),
            });
        }
        if observed.len() > 2 {
            for &code in &observed {
                language.push(Proposition {
                    index: language.len(),
                    attr,
                    polarity: Polarity::NotEquals,
                    code,
                    label: format!("{}:¬{}", meta.name, meta.labels[code as usize]),
                });
            }
        }
    }
    language
}

/// Materialised subgroup: the matched items in population (target-descending)
/// order, split by control class, with the prefix sums the scores read.
///
/// A view may be empty (a contradictory conjunction); score and estimator
/// operations reject empty views explicitly.
#[derive(Clone, Debug)]
pub struct SubgroupView<T> {
    /// Matched item positions in the population's item array, ascending.
    pub item_indices: Vec<usize>,
    /// `class_prefix1[k]` = class-1 items among the first `k` matched items.
    pub class_prefix1: Vec<usize>,
    /// Matched item positions per class, ascending.
    pub class_items: [Vec<usize>; 2],
    /// Per-class target values, descending.
    pub class_targets: [Vec<T>; 2],
    /// Per-class prefix sums of targets: `prefix[c][k]` = sum of the `k`
    /// largest class-`c` targets, with `prefix[c][0] = 0`.
    pub prefix: [Vec<T>; 2],
    /// Population size.
    pub pop_n: usize,
    /// Population mean target.
    pub mean_y: T,
    /// Population impact normaliser `|P| * (max y - mean y)`.
    pub d: T,
    /// Population control class probabilities.
    pub pop_probs: [T; 2],
    /// Population-wide maximum attainable total variation distance.
    pub d_max: T,
}

impl<T: Scalar> SubgroupView<T> {
    /// Builds a view from ascending population item positions.
    ///
    /// Fails with [`Error::OutOfRange`] when an index exceeds the
    /// population; an empty index list yields the empty view.
    pub fn from_indices(population: &Population<T>, indices: &[usize]) -> Result<Self> {
        let n = population.n();
        let mut view = SubgroupView::empty(population);
        for (pos, &i) in indices.iter().enumerate() {
            if i >= n {
                return Err(Error::OutOfRange { index: i, size: n });
            }
            debug_assert!(pos == 0 || indices[pos - 1] < i, "indices must ascend");
            view.push(population, i);
        }
        Ok(view)
    }

    /// Builds the view of the whole population.
    pub fn full(population: &Population<T>) -> Self {
        let mut view = SubgroupView::empty(population);
        for i in 0..population.n() {
            view.push(population, i);
        }
        view
    }

    /// Restricts this view to the items also matching `prop`; the result may
    /// be empty.
    pub fn filter(&self, population: &Population<T>, prop: &Proposition) -> Self {
        let items = population.items();
        let mut view = SubgroupView::empty(population);
        for &i in &self.item_indices {
            if prop.matches(items[i].codes[prop.attr]) {
                view.push(population, i);
            }
        }
        view
    }

    fn empty(population: &Population<T>) -> Self {
        SubgroupView {
            item_indices: Vec::new(),
            class_prefix1: vec![0],
            class_items: [Vec::new(), Vec::new()],
            class_targets: [Vec::new(), Vec::new()],
            prefix: [vec![T::zero()], vec![T::zero()]],
            pop_n: population.n(),
            mean_y: population.mean_y(),
            d: population.d(),
            pop_probs: population.probs(),
            d_max: population.d_max(),
        }
    }

    /// Appends item `i`; positions must be pushed in ascending order so the
    /// per-class target lists stay target-descending.
    fn push(&mut self, population: &Population<T>, i: usize) {
        let item = &population.items()[i];
        let c = usize::from(item.class) - 1;
        self.item_indices.push(i);
        self.class_prefix1
            .push(self.class_prefix1.last().unwrap() + usize::from(item.class == 1));
        self.class_items[c].push(i);
        self.class_targets[c].push(item.y);
        let last = *self.prefix[c].last().unwrap();
        self.prefix[c].push(last + item.y);
    }

    /// Subgroup size.
    pub fn size(&self) -> usize {
        self.item_indices.len()
    }

    /// Returns `true` when no item matched.
    pub fn is_empty(&self) -> bool {
        self.item_indices.is_empty()
    }

    /// Class-`c` item count (`c` is `1` or `2`).
    pub fn class_count(&self, class: u8) -> usize {
        self.class_items[usize::from(class) - 1].len()
    }

    /// Sum of all matched targets.
    pub fn sum_y(&self) -> T {
        *self.prefix[0].last().unwrap() + *self.prefix[1].last().unwrap()
    }

    /// Class counts of the `kappa` matched items with the largest targets.
    pub(crate) fn ct_path(&self, kappa: usize) -> (usize, usize) {
        debug_assert!(kappa <= self.size());
        let ones = self.class_prefix1[kappa];
        (ones, kappa - ones)
    }
}

/// Materialises a selector's extension: the items satisfying every
/// proposition, in population order. The root selector yields the full view;
/// a contradictory conjunction yields an empty one.
pub fn extension<T: Scalar>(
    selector: &Selector,
    language: &[Proposition],
    population: &Population<T>,
) -> SubgroupView<T> {
    let mut view = SubgroupView::full(population);
    for &index in &selector.indices {
        view = view.filter(population, &language[index]);
    }
    view
}

/// Child propositions a search node may add: all propositions with an index
/// greater than the node's maximum, skipping attributes already pinned by an
/// equality (further tests there are redundant or contradictory). Empty at
/// max depth. Every canonical selector is generated exactly once across the
/// whole tree.
pub fn refine(selector: &Selector, language: &[Proposition], max_depth: usize) -> Vec<usize> {
    if selector.depth() >= max_depth {
        return Vec::new();
    }
    let start = selector.indices.last().map_or(0, |&last| last + 1);
    let pinned: Vec<usize> = selector
        .indices
        .iter()
        .filter(|&&i| language[i].polarity == Polarity::Equals)
        .map(|&i| language[i].attr)
        .collect();
    (start..language.len())
        .filter(|&i| !pinned.contains(&language[i].attr))
        .collect()
}
