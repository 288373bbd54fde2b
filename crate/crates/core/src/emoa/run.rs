use alloc::format;

use super::coverage::{milestone_profiles, CoverageTracker, MilestoneTracker};
use super::population::Population;
use super::survival::{step_with, Scratch, StepReport};
use super::Strategy;
use crate::benchmark::{analytic_pareto_front, ProblemKind, ProblemSpec};
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Outcome of one independent run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub seed: u64,
    /// Generations until the population first held the whole Pareto front,
    /// or the iteration cap.
    pub iterations: u64,
    /// `μ + iterations`: the initial population plus one offspring per
    /// generation.
    pub evaluations: u64,
    pub covered_all: bool,
    /// mOJZJ only: first iteration at which all `K` profiles were held.
    pub first_hit_k: Option<u64>,
    /// mOJZJ only: first iteration at which all `C` profiles were held.
    pub first_hit_c: Option<u64>,
    /// How many times a held Pareto front point dropped out of the population.
    pub front_losses: u64,
}

/// Snapshot handed to a run observer after initialization (`iteration == 0`,
/// no report) and after every generation.
pub struct Generation<'a> {
    pub iteration: u64,
    pub population: &'a Population,
    pub coverage: &'a CoverageTracker,
    pub report: Option<&'a StepReport>,
}

/// Runs until the population covers the full Pareto front or
/// `max_iterations` generations have passed. Fully determined by the
/// arguments.
pub fn run_until_covered(
    spec: &ProblemSpec,
    strategy: Strategy,
    mu: usize,
    seed: u64,
    max_iterations: u64,
) -> Result<RunResult> {
    run_with_observer(spec, strategy, mu, seed, max_iterations, |_| {})
}

pub fn run_with_observer<F>(
    spec: &ProblemSpec,
    strategy: Strategy,
    mu: usize,
    seed: u64,
    max_iterations: u64,
    mut observer: F,
) -> Result<RunResult>
where
    F: FnMut(&Generation<'_>),
{
    if mu == 0 {
        return Err(Error::InvalidParameters(
            "population size must be positive".into(),
        ));
    }
    if let Strategy::Aging { tau } = strategy {
        if (mu as u64) < tau.saturating_add(1) {
            return Err(Error::InvalidParameters(format!(
                "aging needs mu >= tau + 1, got mu = {mu}, tau = {tau}"
            )));
        }
    }

    let r = spec.reference_point();
    let target = analytic_pareto_front(spec)?;
    let mut rng = rng_from_seed(seed);
    let mut pop = Population::random(spec, mu, strategy.initial_age(), &mut rng)?;

    let mut coverage = CoverageTracker::new(&target);
    for m in pop.iter() {
        coverage.add(m.objectives(), 0);
    }
    let mut milestones = match spec.kind() {
        ProblemKind::Mojzj => Some(MilestoneTracker::new(&milestone_profiles(spec)?)),
        ProblemKind::Ojzj => None,
    };
    if let Some(ms) = milestones.as_mut() {
        for m in pop.iter() {
            ms.add(&spec.block_profile(m.genotype()));
        }
        ms.observe(0);
    }
    let guaranteed = strategy.guarantees_survival(spec, mu);

    observer(&Generation {
        iteration: 0,
        population: &pop,
        coverage: &coverage,
        report: None,
    });

    let mut scratch = Scratch::default();
    let mut iteration = 0;
    while !coverage.is_complete() && iteration < max_iterations {
        let report = step_with(&mut pop, spec, &r, strategy, &mut rng, &mut scratch)?;
        iteration += 1;
        if !report.removed_offspring {
            let offspring = report.offspring(&pop);
            coverage.add(offspring.objectives(), iteration);
            let lost = coverage.remove(report.removed.objectives());
            debug_assert!(
                !(lost && guaranteed),
                "{strategy} with mu = {mu} lost a Pareto front point on {spec}"
            );
            if let Some(ms) = milestones.as_mut() {
                ms.add(&spec.block_profile(offspring.genotype()));
                ms.remove(&spec.block_profile(report.removed.genotype()));
                ms.observe(iteration);
            }
        }
        observer(&Generation {
            iteration,
            population: &pop,
            coverage: &coverage,
            report: Some(&report),
        });
    }

    Ok(RunResult {
        seed,
        iterations: iteration,
        evaluations: mu as u64 + iteration,
        covered_all: coverage.is_complete(),
        first_hit_k: milestones.as_ref().and_then(MilestoneTracker::first_hit_k),
        first_hit_c: milestones.as_ref().and_then(MilestoneTracker::first_hit_c),
        front_losses: coverage.losses(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec::Vec;

    #[test]
    fn same_seed_same_result() {
        let spec = ProblemSpec::ojzj(8, 2).unwrap();
        for strategy in [
            Strategy::Classic,
            Strategy::StochasticUpdate,
            Strategy::Aging { tau: 5 },
        ] {
            let a = run_until_covered(&spec, strategy, 10, 77, 1_000_000).unwrap();
            let b = run_until_covered(&spec, strategy, 10, 77, 1_000_000).unwrap();
            assert_eq!(a, b);
            assert!(a.covered_all);
            assert_eq!(a.evaluations, 10 + a.iterations);
        }
    }

    #[test]
    fn termination_means_full_front_in_population() {
        let spec = ProblemSpec::ojzj(10, 2).unwrap();
        let target = analytic_pareto_front(&spec).unwrap();
        let mut last: BTreeSet<crate::ObjectiveVector> = BTreeSet::new();
        let res = run_with_observer(&spec, Strategy::Aging { tau: 6 }, 12, 3, 1_000_000, |g| {
            last = g
                .population
                .iter()
                .map(|m| m.objectives().clone())
                .collect();
        })
        .unwrap();
        assert!(res.covered_all);
        let held: BTreeSet<_> = last.into_iter().filter(|v| target.contains(v)).collect();
        assert_eq!(&held, target.points());
    }

    #[test]
    fn cap_yields_uncovered_result() {
        let spec = ProblemSpec::ojzj(20, 4).unwrap();
        let res = run_until_covered(&spec, Strategy::Classic, 32, 1, 50).unwrap();
        assert!(!res.covered_all);
        assert_eq!(res.iterations, 50);
        assert_eq!(res.evaluations, 82);
    }

    #[test]
    fn parameter_validation() {
        let spec = ProblemSpec::ojzj(10, 4).unwrap();
        assert!(run_until_covered(&spec, Strategy::Classic, 0, 1, 10).is_err());
        assert!(run_until_covered(&spec, Strategy::Aging { tau: 12 }, 12, 1, 10).is_err());
        assert!(run_until_covered(&spec, Strategy::Aging { tau: 11 }, 12, 1, 10).is_ok());
    }

    #[test]
    fn mojzj_records_milestones() {
        let spec = ProblemSpec::mojzj(8, 4, 1).unwrap();
        let res = run_until_covered(&spec, Strategy::Aging { tau: 26 }, 52, 5, 10_000_000).unwrap();
        assert!(res.covered_all);
        let k = res.first_hit_k.unwrap();
        let c = res.first_hit_c.unwrap();
        assert!(k <= c && c <= res.iterations);
        let ojzj = run_until_covered(
            &ProblemSpec::ojzj(8, 1).unwrap(),
            Strategy::Classic,
            8,
            5,
            100_000,
        )
        .unwrap();
        assert_eq!((ojzj.first_hit_k, ojzj.first_hit_c), (None, None));
    }

    #[test]
    fn aging_tau_zero_replays_classic() {
        let spec = ProblemSpec::ojzj(10, 4).unwrap();
        let trace = |strategy| {
            let mut t: Vec<Vec<crate::BitString>> = Vec::new();
            run_with_observer(&spec, strategy, 12, 9, 400, |g| {
                t.push(g.population.iter().map(|m| m.genotype().clone()).collect());
            })
            .unwrap();
            t
        };
        assert_eq!(trace(Strategy::Classic), trace(Strategy::Aging { tau: 0 }));
    }
}
