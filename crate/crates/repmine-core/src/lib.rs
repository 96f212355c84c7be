//! Representative subgroup discovery over tabular data.
//!
//! Given a table with a numeric target and a balanced binary control variable,
//! this crate mines the top-k conjunctive descriptions (e.g. `"Children:¬Hi,
//! Cars:¬V.Hi"`) that maximise the *controlled impact* objective
//!
//! ```text
//! f(Q) = max(0, impact(Q))^(1-a) * repr(Q)^a ,        a in [0, 1)
//! ```
//!
//! where `impact` is coverage times the normalised excess of the subgroup's
//! mean target over the population mean, and `repr` measures how closely the
//! subgroup reproduces the population's control-class distribution (1 minus
//! the normalised total variation distance).
//!
//! Mining runs a deterministic best-first branch-and-bound over a canonical
//! conjunctive selection language. Subtrees are pruned with admissible
//! optimistic estimators of `f`:
//!
//! * [`estimators::naive_oest`] scans the full class-count space (exact tight
//!   bound, quadratic),
//! * [`estimators::brig_oest`] bounds impact only and fixes `repr = 1`
//!   (linear, not tight),
//! * [`estimators::rawr_oest`] computes the exact tight bound in
//!   `O(n log n)` by ternary searches over concave sequences of the
//!   class-count space (balanced binary controls only).
//!
//! The crate is generic over the floating-point scalar via [`Scalar`];
//! `f64`-concrete aliases are exported at the crate root.
//!
//! Pipeline: [`dataset::load_csv`] -> [`dataset::discretize`] ->
//! [`dataset::stratify`] -> [`dataset::build_population`] ->
//! [`selection::generate_propositions`] -> [`search::mine_topk`].

pub mod ccs;
pub mod dataset;
pub mod error;
pub mod estimators;
pub mod oracle;
pub mod scalar;
pub mod scores;
pub mod search;
pub mod selection;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Population over `f64` targets.
pub type Population64 = dataset::Population<f64>;
/// Discretized table over `f64` targets.
pub type DiscreteTable64 = dataset::DiscreteTable<f64>;
/// Subgroup view over `f64` targets.
pub type SubgroupView64 = selection::SubgroupView<f64>;
/// Score breakdown over `f64`.
pub type ScoreBreakdown64 = scores::ScoreBreakdown<f64>;
/// Mining configuration over `f64`.
pub type MineConfig64 = search::MineConfig<f64>;
/// Mined result entry over `f64`.
pub type ResultEntry64 = search::ResultEntry<f64>;
