//! Shared builders for randomized test instances.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use repmine_core::dataset::{build_population, AttributeMeta, DiscreteRow, DiscreteTable, Population};
use repmine_core::selection::SubgroupView;

pub type Population64 = Population<f64>;
pub type SubgroupView64 = SubgroupView<f64>;

/// Population from explicit targets and classes (1 or 2), no attributes.
pub fn population_from(targets: &[f64], classes: &[u8]) -> Population64 {
    let rows = targets
        .iter()
        .zip(classes)
        .enumerate()
        .map(|(i, (&y, &c))| DiscreteRow { y, class: c, codes: Vec::new(), source_row: i })
        .collect();
    let table = DiscreteTable {
        attributes: Vec::new(),
        rows,
        control_labels: vec!["A".to_string(), "B".to_string()],
    };
    build_population(&table).expect("test table must build")
}

/// Random balanced population of `2 * half` items with integer-valued
/// targets in `0..=50` (exact in f64, ties likely) and shuffled classes.
pub fn random_balanced_population(rng: &mut ChaCha8Rng, half: usize) -> Population64 {
    loop {
        let n = 2 * half;
        let targets: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=50u32))).collect();
        let mut classes: Vec<u8> = (0..n).map(|i| if i < half { 1 } else { 2 }).collect();
        classes.shuffle(rng);
        if targets.iter().any(|&t| t != targets[0]) {
            return population_from(&targets, &classes);
        }
    }
}

/// Random non-empty subgroup of a population, each item kept with the given
/// probability.
pub fn random_view(rng: &mut ChaCha8Rng, population: &Population64, keep: f64) -> SubgroupView64 {
    loop {
        let indices: Vec<usize> = (0..population.n()).filter(|_| rng.gen_bool(keep)).collect();
        if !indices.is_empty() {
            return SubgroupView::from_indices(population, &indices).expect("indices in range");
        }
    }
}

/// Random balanced population with descriptive attributes: `attrs` columns,
/// each with `codes[i]` equally likely values.
pub fn random_attributed_population(
    rng: &mut ChaCha8Rng,
    half: usize,
    codes: &[u16],
) -> Population64 {
    loop {
        let n = 2 * half;
        let targets: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=50u32))).collect();
        if targets.iter().all(|&t| t == targets[0]) {
            continue;
        }
        let mut classes: Vec<u8> = (0..n).map(|i| if i < half { 1 } else { 2 }).collect();
        classes.shuffle(rng);
        let rows = (0..n)
            .map(|i| DiscreteRow {
                y: targets[i],
                class: classes[i],
                codes: codes.iter().map(|&b| rng.gen_range(0..b)).collect(),
                source_row: i,
            })
            .collect();
        let attributes = codes
            .iter()
            .enumerate()
            .map(|(a, &b)| AttributeMeta {
                name: format!("A{a}"),
                labels: (0..b).map(|c| format!("v{c}")).collect(),
            })
            .collect();
        let table = DiscreteTable {
            attributes,
            rows,
            control_labels: vec!["A".to_string(), "B".to_string()],
        };
        return build_population(&table).expect("test table must build");
    }
}

/// Tolerance equality used across oracle comparisons; thresholds are the
/// crate-wide pinned ones.
pub fn close(a: f64, b: f64) -> bool {
    repmine_core::tol::approx_eq(a, b)
}

pub fn assert_close(a: f64, b: f64, what: &str) {
    assert!(close(a, b), "{what}: {a} vs {b} (diff {})", (a - b).abs());
}
