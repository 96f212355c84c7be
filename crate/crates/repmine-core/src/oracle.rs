//! Brute-force references: exhaustive subset and language enumeration.
//!
//! These are deliberately written against the plain score functions, not
//! the class-count grid, so they share no code with the estimators they
//! verify. Hard input caps keep them honest about their exponential cost.

use crate::dataset::Population;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scores::{breakdown, controlled_impact};
use crate::search::{MineConfig, ResultEntry, TopK};
use crate::selection::{refine, Proposition, Selector, SubgroupView};

/// Largest subgroup [`brute_force_oest`] accepts.
pub const OEST_CAP: usize = 20;

/// Largest selector count [`brute_force_topk`] enumerates.
pub const LANGUAGE_CAP: usize = 1_000_000;

/// The optimistic estimate computed literally: the maximum controlled
/// impact over all `2^|Q| - 1` non-empty subsets of the subgroup.
pub fn brute_force_oest<T: Scalar>(
    view: &SubgroupView<T>,
    population: &Population<T>,
    a: T,
) -> Result<T> {
    if view.is_empty() {
        return Err(Error::EmptySubgroup);
    }
    let n = view.size();
    if n > OEST_CAP {
        return Err(Error::TooLarge { size: n, cap: OEST_CAP });
    }
    let mut best = T::neg_infinity();
    let mut subset = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        subset.clear();
        for (bit, &item) in view.item_indices.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                subset.push(item);
            }
        }
        let candidate = SubgroupView::from_indices(population, &subset)?;
        best = best.max(controlled_impact(&candidate, a)?);
    }
    Ok(best)
}

/// The exact top-k subgroups by exhaustive enumeration of every canonical
/// non-root selector up to the depth limit, with the same tie-breaking as
/// the search. Subtrees with empty extensions are skipped (all their
/// refinements are empty too).
pub fn brute_force_topk<T: Scalar>(
    population: &Population<T>,
    language: &[Proposition],
    config: &MineConfig<T>,
) -> Result<Vec<ResultEntry<T>>> {
    let mut top = TopK::new(config.k);
    let mut visited = 0usize;
    let root_view = SubgroupView::full(population);
    walk(population, language, config, &Selector::root(), &root_view, &mut top, &mut visited)?;
    Ok(top.into_entries())
}

fn walk<T: Scalar>(
    population: &Population<T>,
    language: &[Proposition],
    config: &MineConfig<T>,
    selector: &Selector,
    view: &SubgroupView<T>,
    top: &mut TopK<T>,
    visited: &mut usize,
) -> Result<()> {
    for index in refine(selector, language, config.max_depth) {
        *visited += 1;
        if *visited > LANGUAGE_CAP {
            return Err(Error::LanguageTooLarge(*visited));
        }
        let child = selector.child(index);
        let child_view = view.filter(population, &language[index]);
        if child_view.is_empty() {
            continue;
        }
        top.insert(ResultEntry {
            descriptor: child.render(language),
            scores: breakdown(&child_view, config.weight)?,
            m1: child_view.class_count(1),
            m2: child_view.class_count(2),
            size: child_view.size(),
        });
        walk(population, language, config, &child, &child_view, top, visited)?;
    }
    Ok(())
}

