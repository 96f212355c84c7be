//! Branch-and-bound mining against exhaustive enumeration: exactness,
//! estimator independence, approximation guarantees, budget handling, and
//! determinism.

mod common;

use common::{population_from, random_attributed_population};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use repmine_core::error::Error;
use repmine_core::estimators::EstimatorKind;
use repmine_core::oracle::brute_force_topk;
use repmine_core::search::{mine_topk, MineConfig, ResultEntry};
use repmine_core::selection::generate_propositions;
use repmine_core::tol::approx_eq;

fn config(weight: f64, k: usize, estimator: EstimatorKind) -> MineConfig<f64> {
    MineConfig {
        weight,
        k,
        alpha: 1.0,
        max_depth: 3,
        estimator,
        node_budget: 50_000_000,
    }
}

fn summarize(entries: &[ResultEntry<f64>]) -> Vec<(String, f64)> {
    entries.iter().map(|e| (e.descriptor.clone(), e.scores.f)).collect()
}

/// The returned scores must match the enumerated top-k values one for one
/// (candidates tying the k-th score may be pruned before tie-breaking, so
/// descriptors on the boundary are not unique), and every returned
/// descriptor must carry its true score.
fn assert_matches_enumeration(
    got: &[ResultEntry<f64>],
    expected: &[ResultEntry<f64>],
    all: &[ResultEntry<f64>],
    context: &str,
) {
    assert_eq!(got.len(), expected.len(), "{context}: result count");
    for (g, e) in got.iter().zip(expected) {
        assert!(
            approx_eq(g.scores.f, e.scores.f),
            "{context}: score {} vs enumerated {}",
            g.scores.f,
            e.scores.f
        );
    }
    for g in got {
        let truth = all
            .iter()
            .find(|e| e.descriptor == g.descriptor)
            .unwrap_or_else(|| panic!("{context}: `{}` not in the enumeration", g.descriptor));
        assert!(approx_eq(g.scores.f, truth.scores.f), "{context}: stale score");
    }
}

#[test]
fn search_matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for round in 0..20 {
        let half = rng.gen_range(4..16);
        let p = random_attributed_population(&mut rng, half, &[3, 4, 2]);
        let language = generate_propositions(&p);
        let weight = [0.0, 0.3, 0.5, 0.8][round % 4];
        let k = [1, 3, 5][round % 3];
        let cfg = config(weight, k, EstimatorKind::Rawr);
        let expected = brute_force_topk(&p, &language, &cfg).unwrap();
        let all = brute_force_topk(&p, &language, &config(weight, 1_000_000, EstimatorKind::Rawr))
            .unwrap();
        for kind in EstimatorKind::ALL {
            let (got, stats) = mine_topk(&p, &language, &config(weight, k, kind)).unwrap();
            let context = format!("estimator {kind} at a={weight}, k={k}");
            assert_matches_enumeration(&got, &expected, &all, &context);
            assert!(!stats.budget_exhausted);
            assert!(stats.nodes_expanded > 0 && stats.estimator_calls > 0);
        }
    }
}

#[test]
fn weight_zero_finds_the_impact_maximiser() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let p = random_attributed_population(&mut rng, 20, &[4, 3]);
    let language = generate_propositions(&p);
    let cfg = config(0.0, 1, EstimatorKind::Rawr);
    let (got, _) = mine_topk(&p, &language, &cfg).unwrap();
    let expected = brute_force_topk(&p, &language, &cfg).unwrap();
    let all = brute_force_topk(&p, &language, &config(0.0, 1_000_000, EstimatorKind::Rawr)).unwrap();
    assert_matches_enumeration(&got, &expected, &all, "impact-only top-1");
    assert!(approx_eq(got[0].scores.f, got[0].scores.covcent.max(0.0)));
}

#[test]
fn reported_entries_are_internally_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let p = random_attributed_population(&mut rng, 25, &[4, 3, 2]);
    let language = generate_propositions(&p);
    let a = 0.4;
    let (got, _) = mine_topk(&p, &language, &config(a, 8, EstimatorKind::Rawr)).unwrap();
    assert!(!got.is_empty());
    for pair in got.windows(2) {
        assert!(pair[0].scores.f >= pair[1].scores.f, "results must be score-descending");
    }
    for entry in &got {
        assert_ne!(entry.descriptor, "⊤", "the empty conjunction is not a result");
        assert_eq!(entry.m1 + entry.m2, entry.size);
        assert!(entry.size > 0 && entry.size <= p.n());
        let s = &entry.scores;
        assert!(approx_eq(s.weight, a));
        assert!(approx_eq(s.covcent, s.coverage * s.tendency));
        assert!(approx_eq(s.f, s.covcent.max(0.0).powf(1.0 - a) * s.repr.powf(a)));
    }
}

#[test]
fn relaxed_alpha_keeps_the_guarantee() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..10 {
        let half = rng.gen_range(10..25);
        let p = random_attributed_population(&mut rng, half, &[4, 3, 3]);
        let language = generate_propositions(&p);
        let exact = brute_force_topk(&p, &language, &config(0.5, 1, EstimatorKind::Rawr)).unwrap();
        let optimum = exact[0].scores.f;
        for alpha in [0.3, 0.5, 0.8] {
            let cfg = MineConfig { alpha, ..config(0.5, 1, EstimatorKind::Rawr) };
            let (got, _) = mine_topk(&p, &language, &cfg).unwrap();
            assert!(
                got[0].scores.f >= alpha * optimum - 1e-12,
                "alpha={alpha}: got {} for optimum {optimum}",
                got[0].scores.f
            );
            assert!(got[0].scores.f <= optimum + 1e-12, "cannot beat the optimum");
        }
    }
}

#[test]
fn node_budget_stops_the_search_and_is_flagged() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let p = random_attributed_population(&mut rng, 30, &[4, 4, 3]);
    let language = generate_propositions(&p);
    let cfg = MineConfig { node_budget: 3, ..config(0.5, 5, EstimatorKind::Rawr) };
    let (got, stats) = mine_topk(&p, &language, &cfg).unwrap();
    assert!(stats.budget_exhausted);
    assert_eq!(stats.nodes_expanded, 3);
    // Whatever was scored before the stop is still a valid subgroup list.
    for entry in &got {
        assert!(entry.size > 0);
    }

    let (_, stats) = mine_topk(&p, &language, &config(0.5, 5, EstimatorKind::Rawr)).unwrap();
    assert!(!stats.budget_exhausted);
}

#[test]
fn saturated_k_returns_every_non_empty_subgroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(56);
    let p = random_attributed_population(&mut rng, 6, &[2, 2]);
    let language = generate_propositions(&p);
    let cfg = config(0.5, 10_000, EstimatorKind::Naive);
    let (got, _) = mine_topk(&p, &language, &cfg).unwrap();
    let expected = brute_force_topk(&p, &language, &cfg).unwrap();
    assert_eq!(summarize(&got), summarize(&expected));
    assert!(got.len() < 10_000, "the tiny language cannot saturate k");
}

#[test]
fn search_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    let p = random_attributed_population(&mut rng, 20, &[4, 3, 2]);
    let language = generate_propositions(&p);
    let cfg = config(0.6, 5, EstimatorKind::Rawr);
    let (first, first_stats) = mine_topk(&p, &language, &cfg).unwrap();
    let (second, second_stats) = mine_topk(&p, &language, &cfg).unwrap();
    assert_eq!(summarize(&first), summarize(&second));
    assert_eq!(first_stats.nodes_expanded, second_stats.nodes_expanded);
    assert_eq!(first_stats.nodes_pruned, second_stats.nodes_pruned);
    assert_eq!(first_stats.estimator_calls, second_stats.estimator_calls);
    assert_eq!(first_stats.fccs_evals, second_stats.fccs_evals);
}

#[test]
fn configuration_errors_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(58);
    let p = random_attributed_population(&mut rng, 5, &[2]);
    let language = generate_propositions(&p);

    let k0 = MineConfig { k: 0, ..config(0.5, 1, EstimatorKind::Rawr) };
    assert!(matches!(mine_topk(&p, &language, &k0), Err(Error::InvalidConfig(_))));

    for weight in [1.0, -0.1, f64::NAN] {
        let cfg = config(weight, 1, EstimatorKind::Rawr);
        assert!(matches!(mine_topk(&p, &language, &cfg), Err(Error::WeightOutOfRange(_))));
    }

    for alpha in [0.0, 1.2, f64::NAN] {
        let cfg = MineConfig { alpha, ..config(0.5, 1, EstimatorKind::Rawr) };
        assert!(matches!(mine_topk(&p, &language, &cfg), Err(Error::AlphaOutOfRange(_))));
    }

    let lopsided = population_from(&[5.0, 4.0, 3.0, 2.0, 1.0], &[1, 1, 1, 2, 2]);
    let empty_language = generate_propositions(&lopsided);
    let cfg = config(0.5, 1, EstimatorKind::Rawr);
    assert!(matches!(
        mine_topk(&lopsided, &empty_language, &cfg),
        Err(Error::UnbalancedPopulation)
    ));
    // The impact-only estimator accepts the same population.
    let cfg = config(0.5, 1, EstimatorKind::Brig);
    assert!(mine_topk(&lopsided, &empty_language, &cfg).is_ok());
}
