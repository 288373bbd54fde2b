//! Core algorithms against the brute-force oracles.

use std::collections::BTreeSet;

use agemoa_core::seed::rng_from_seed;
use agemoa_core::{
    analytic_pareto_front, fast_non_dominated_sort, hv_contribution, hypervolume,
    max_antichain_bound, run_with_observer, ObjectiveVector, ProblemSpec, ReferencePoint, Strategy,
};
use agemoa_testkit::{
    brute_force_pareto_front, front_multiset, front_witnesses, grid_hypervolume_oracle,
    naive_front_peeling, reference_objectives,
};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn bits(n: usize) -> impl proptest::strategy::Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), n)
}

#[test]
fn analytic_fronts_match_enumeration() {
    for n in 4..=12 {
        for k in 1..=n / 2 {
            let spec = ProblemSpec::ojzj(n, k).unwrap();
            let front = analytic_pareto_front(&spec).unwrap();
            assert_eq!(
                front.points(),
                &brute_force_pareto_front(&spec).unwrap(),
                "{spec}"
            );
            assert_eq!(front.size(), n - 2 * k + 3);
        }
    }
    for (n, m, k) in [(8, 4, 1), (8, 4, 2), (12, 4, 2), (12, 6, 1), (16, 4, 3)] {
        let spec = ProblemSpec::mojzj(n, m, k).unwrap();
        let front = analytic_pareto_front(&spec).unwrap();
        assert_eq!(
            front.points(),
            &brute_force_pareto_front(&spec).unwrap(),
            "{spec}"
        );
        assert!(front.size() as u64 <= max_antichain_bound(&spec));
    }
}

#[test]
fn every_front_point_has_a_witness() {
    let spec = ProblemSpec::mojzj(12, 4, 2).unwrap();
    let front = brute_force_pareto_front(&spec).unwrap();
    for (v, witness) in front_witnesses(&spec, &front).unwrap() {
        let x = witness.expect("front point is attained");
        assert_eq!(reference_objectives(&x, &spec), v.as_slice());
    }
}

proptest! {
    #[test]
    fn ojzj_matches_reference(x in (4usize..70).prop_flat_map(bits), k_frac in 0.0f64..0.5) {
        let n = x.len();
        let k = 1 + ((n / 2 - 1) as f64 * k_frac) as usize;
        let spec = ProblemSpec::ojzj(n, k).unwrap();
        let got = spec.evaluate(&agemoa_core::BitString::from_bits(&x)).unwrap();
        let expected = reference_objectives(&x, &spec);
        prop_assert_eq!(got.as_slice(), expected.as_slice());
    }

    #[test]
    fn mojzj_matches_reference(x in bits(24), m in prop::sample::select(vec![2usize, 4, 6]), k in 1usize..=2) {
        let spec = ProblemSpec::mojzj(24, m, k).unwrap();
        let got = spec.evaluate(&agemoa_core::BitString::from_bits(&x)).unwrap();
        let expected = reference_objectives(&x, &spec);
        prop_assert_eq!(got.as_slice(), expected.as_slice());
    }

    #[test]
    fn hypervolume_matches_grid(
        m in 2usize..=4,
        raw in proptest::collection::vec(proptest::collection::vec(-1i64..12, 4), 1..16),
    ) {
        let points: Vec<Vec<i64>> = raw.into_iter().map(|p| p[..m].to_vec()).collect();
        let r = ReferencePoint::uniform(m, -1);
        prop_assert_eq!(hypervolume(&points, &r).unwrap(), grid_hypervolume_oracle(&points, &r).unwrap());
        // Contributions are hypervolume differences.
        let total = hypervolume(&points, &r).unwrap();
        for i in 0..points.len() {
            let mut rest = points.clone();
            rest.remove(i);
            let without = if rest.is_empty() { 0 } else { hypervolume(&rest, &r).unwrap() };
            prop_assert_eq!(hv_contribution(i, &points, &r).unwrap(), total - without);
        }
    }

    #[test]
    fn sorting_matches_peeling(
        m in prop::sample::select(vec![2usize, 3, 4]),
        raw in proptest::collection::vec(proptest::collection::vec(0i64..5, 4), 1..60),
    ) {
        let points: Vec<Vec<i64>> = raw.into_iter().map(|p| p[..m].to_vec()).collect();
        let fast = fast_non_dominated_sort(&points).unwrap();
        let naive = naive_front_peeling(&points).unwrap();
        prop_assert_eq!(front_multiset(&points, &fast), front_multiset(&points, &naive));
        let sets = |p: &agemoa_core::FrontPartition| -> Vec<BTreeSet<usize>> {
            p.fronts().iter().map(|f| f.iter().copied().collect()).collect()
        };
        prop_assert_eq!(sets(&fast), sets(&naive));
    }
}

/// Runs every strategy and checks, each generation, the population size and
/// that every member is evaluated correctly. With a population above the
/// antichain bound, classic and aging never lose a held front point.
#[test]
fn runs_keep_their_invariants() {
    let spec = ProblemSpec::ojzj(8, 2).unwrap();
    let target = analytic_pareto_front(&spec).unwrap();
    let mu = 2 * (8 - 4 + 4);
    for strategy in [
        Strategy::Classic,
        Strategy::StochasticUpdate,
        Strategy::Aging { tau: 4 },
    ] {
        for seed in 0..4 {
            let mut held = BTreeSet::<ObjectiveVector>::new();
            let mut losses = 0;
            let result = run_with_observer(&spec, strategy, mu, seed, 1_000_000, |g| {
                assert_eq!(g.population.len(), mu);
                let now: BTreeSet<ObjectiveVector> = g
                    .population
                    .iter()
                    .inspect(|ind| {
                        let x: Vec<bool> = ind.genotype().iter().collect();
                        assert_eq!(
                            ind.objectives().as_slice(),
                            reference_objectives(&x, &spec).as_slice()
                        );
                    })
                    .map(|ind| ind.objectives().clone())
                    .filter(|v| target.contains(v))
                    .collect();
                if !now.is_superset(&held) {
                    losses += 1;
                }
                held = now;
            })
            .unwrap();
            assert!(result.covered_all, "{strategy} seed {seed}");
            assert_eq!(held.len(), target.size());
            if strategy != Strategy::StochasticUpdate {
                assert_eq!(losses, 0, "{strategy} seed {seed}");
            }
        }
    }
}

#[test]
fn seeded_rng_is_reproducible() {
    use rand::Rng;
    let a: Vec<u32> = (0..8)
        .scan(rng_from_seed(5), |r, _| Some(r.gen()))
        .collect();
    let b: Vec<u32> = (0..8)
        .scan(rng_from_seed(5), |r, _| Some(r.gen()))
        .collect();
    assert_eq!(a, b);
}
