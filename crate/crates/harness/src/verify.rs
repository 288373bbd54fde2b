//! Self-verification suite. Oracle equivalences and survival invariants run
//! in seconds; the scaled runtime comparisons take minutes. Each check returns a [`CheckOutcome`] so the
//! CLI and the acceptance test can report them uniformly.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use agemoa_core::emoa::Generation;
use agemoa_core::seed::rng_from_seed;
use agemoa_core::{
    analytic_pareto_front, fast_non_dominated_sort, hypervolume, run_with_observer, step,
    ObjectiveVector, Population, ProblemKind, ProblemSpec, ReferencePoint, Strategy,
};
use agemoa_testkit::{
    brute_force_pareto_front, grid_hypervolume_oracle, naive_front_peeling, random_points,
};
use rand::Rng;

use crate::algorithm::Algorithm;
use crate::bounds::aging_runtime_bound;
use crate::config::ExperimentConfig;
use crate::experiment::{run_experiment, run_experiment_to};
use crate::params::default_parameters;
use crate::presets;
use crate::stats::{find, summarize, CellSummary};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name: name.to_owned(),
            passed,
            detail,
        }
    }

    /// `PASS name: detail` or `FAIL name: detail`.
    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn elapsed(start: Instant) -> String {
    format!("{:.1}s", start.elapsed().as_secs_f64())
}

/// Analytic Pareto fronts equal exhaustive enumeration on every small
/// instance: OJZJ for `n ∈ 6..=14`, `k ∈ 1..=3`, and mOJZJ with `m = 4` for
/// `n ∈ {8, 12}`, `k ∈ {1, 2}`.
pub fn benchmark_oracle() -> CheckOutcome {
    let start = Instant::now();
    let mut specs = Vec::new();
    for n in 6..=14 {
        for k in 1..=3 {
            specs.push(ProblemSpec::ojzj(n, k));
        }
    }
    for n in [8, 12] {
        for k in [1, 2] {
            specs.push(ProblemSpec::mojzj(n, 4, k));
        }
    }
    let mut mismatches = Vec::new();
    for spec in &specs {
        let outcome = spec.clone().map_err(|e| e.to_string()).and_then(|spec| {
            let analytic = analytic_pareto_front(&spec).map_err(|e| e.to_string())?;
            let brute = brute_force_pareto_front(&spec).map_err(|e| e.to_string())?;
            Ok((spec, analytic.points() == &brute))
        });
        match outcome {
            Ok((_, true)) => {}
            Ok((spec, false)) => mismatches.push(spec.to_string()),
            Err(e) => mismatches.push(e),
        }
    }
    CheckOutcome::new(
        "benchmark oracle",
        mismatches.is_empty(),
        format!(
            "{} instances, mismatches {:?}, {}",
            specs.len(),
            mismatches,
            elapsed(start)
        ),
    )
}

/// Exact hypervolume equals grid-cell counting on 200 random point sets per
/// `m ∈ {2, 3, 4}` (up to 20 points, coordinates in `0..=18`).
pub fn hypervolume_oracle(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 2..=4 {
        let r = ReferencePoint::uniform(m, -1);
        for case in 0..200 {
            let count = rng.gen_range(1..=20);
            let points = random_points(&mut rng, count, m, 0, 18);
            total += 1;
            let exact = hypervolume(&points, &r).map_err(|e| e.to_string());
            let grid = grid_hypervolume_oracle(&points, &r).map_err(|e| e.to_string());
            if exact != grid {
                failures.push(format!("m={m} case {case}: {exact:?} vs {grid:?}"));
            }
        }
    }
    CheckOutcome::new(
        "hypervolume oracle",
        failures.is_empty(),
        format!(
            "{total} sets, {} mismatches {:?}, {}",
            failures.len(),
            failures.first(),
            elapsed(start)
        ),
    )
}

fn front_sets(fronts: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    fronts.iter().map(|f| f.iter().copied().collect()).collect()
}

/// Fast non-dominated sorting equals naive front peeling on 500 random
/// multisets per `m ∈ {2, 4}` (up to 60 points, small coordinates so
/// duplicates are frequent).
pub fn sorting_oracle(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    let mut total = 0;
    for m in [2, 4] {
        for _ in 0..500 {
            let count = rng.gen_range(1..=60);
            let hi = rng.gen_range(1..=8);
            let points = random_points(&mut rng, count, m, 0, hi);
            total += 1;
            let fast = fast_non_dominated_sort(&points).map(|p| front_sets(p.fronts()));
            let naive = naive_front_peeling(&points).map(|p| front_sets(p.fronts()));
            match (fast, naive) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => failures += 1,
            }
        }
    }
    CheckOutcome::new(
        "sorting oracle",
        failures == 0,
        format!(
            "{total} multisets, {failures} mismatches, {}",
            elapsed(start)
        ),
    )
}

#[derive(Debug, Default)]
struct InvariantTally {
    generations: u64,
    coverage_losses: u64,
    size_violations: u64,
    eligibility_violations: u64,
    uncovered_runs: u64,
}

fn watch_aging_run(
    spec: &ProblemSpec,
    seed: u64,
    tally: &mut InvariantTally,
) -> Result<(), String> {
    let (mu, tau) = default_parameters(spec);
    let target = analytic_pareto_front(spec).map_err(|e| e.to_string())?;
    let mut held: BTreeSet<ObjectiveVector> = BTreeSet::new();
    let mut observe = |g: &Generation<'_>| {
        let now: BTreeSet<ObjectiveVector> = g
            .population
            .iter()
            .map(|ind| ind.objectives())
            .filter(|v| target.contains(v))
            .cloned()
            .collect();
        if !now.is_superset(&held) {
            tally.coverage_losses += 1;
        }
        held = now;
        if g.population.len() != mu {
            tally.size_violations += 1;
        }
        if let Some(report) = g.report {
            tally.generations += 1;
            if (report.candidates as u64) + tau < mu as u64 + 1 {
                tally.eligibility_violations += 1;
            }
        }
    };
    let result = run_with_observer(
        spec,
        Strategy::Aging { tau },
        mu,
        seed,
        u64::MAX,
        &mut observe,
    )
    .map_err(|e| e.to_string())?;
    if !result.covered_all {
        tally.uncovered_runs += 1;
    }
    Ok(())
}

/// Once a Pareto front point is in the population it stays there. Checked
/// every generation of 10 full aging runs on OJZJ(10, 4) and 3 on
/// mOJZJ(12, 4, 3) with default parameters, together with the population
/// size and the eligible-set floor `|R| ≥ μ + 1 − τ`.
pub fn coverage_invariant(master_seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut tally = InvariantTally::default();
    let runs = [
        (ProblemSpec::ojzj(10, 4), 10u64),
        (ProblemSpec::mojzj(12, 4, 3), 3),
    ];
    for (spec, count) in runs {
        let spec = spec.expect("valid instance");
        for run in 0..count {
            let seed = agemoa_core::seed::derive_seed(
                master_seed,
                &[spec.n() as u64, spec.m() as u64, run],
            );
            if let Err(e) = watch_aging_run(&spec, seed, &mut tally) {
                return CheckOutcome::new("coverage invariant", false, e);
            }
        }
    }
    let passed = tally.coverage_losses == 0
        && tally.size_violations == 0
        && tally.eligibility_violations == 0
        && tally.uncovered_runs == 0;
    CheckOutcome::new(
        "coverage invariant",
        passed,
        format!("{tally:?}, {}", elapsed(start)),
    )
}

/// Aging with `τ = 0` and the classic update produce identical populations,
/// generation by generation, from identical seeds (OJZJ(10, 4), 5 seeds,
/// 1000 generations each).
pub fn degenerate_equivalence(master_seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let spec = ProblemSpec::ojzj(10, 4).expect("valid instance");
    let r = spec.reference_point();
    let (mu, _) = default_parameters(&spec);
    let mut divergence = None;
    'seeds: for s in 0..5u64 {
        let seed = agemoa_core::seed::derive_seed(master_seed, &[s]);
        let mut rng_a = rng_from_seed(seed);
        let mut rng_b = rng_from_seed(seed);
        let mut a = Population::random(&spec, mu, 0, &mut rng_a).expect("valid population");
        let mut b = Population::random(&spec, mu, 0, &mut rng_b).expect("valid population");
        for generation in 1..=1000 {
            let ra = step(&mut a, &spec, &r, Strategy::Classic, &mut rng_a);
            let rb = step(&mut b, &spec, &r, Strategy::Aging { tau: 0 }, &mut rng_b);
            if ra != rb || a != b {
                divergence = Some(format!("seed index {s}, generation {generation}"));
                break 'seeds;
            }
        }
    }
    CheckOutcome::new(
        "degenerate equivalence",
        divergence.is_none(),
        format!(
            "5 seeds x 1000 generations, divergence {divergence:?}, {}",
            elapsed(start)
        ),
    )
}

fn mean_evals(summaries: &[CellSummary], algorithm: Algorithm, n: usize) -> Option<f64> {
    find(summaries, algorithm, n)
        .filter(|s| s.failures == 0)
        .and_then(|s| s.mean_evaluations)
}

/// Means of the three algorithms on one size of a preset.
struct Comparison {
    classic: f64,
    spu: f64,
    aging: f64,
}

fn compare(config: &ExperimentConfig, n: usize, threads: usize) -> Result<Comparison, String> {
    let config = ExperimentConfig {
        n: vec![n],
        ..config.clone()
    };
    let records = run_experiment(&config, threads).map_err(|e| e.to_string())?;
    let s = summarize(&records);
    let get = |a| mean_evals(&s, a, n).ok_or_else(|| format!("{a} had failed runs at n = {n}"));
    Ok(Comparison {
        classic: get(Algorithm::Classic)?,
        spu: get(Algorithm::StochasticUpdate)?,
        aging: get(Algorithm::Aging)?,
    })
}

/// OJZJ, `k = 4`, `n = 20`, `runs` runs per algorithm with default `μ`, `τ`:
/// aging needs fewer evaluations than both baselines, at least 2.5 times
/// fewer than classic and 1.8 times fewer than the stochastic update.
pub fn fig2_reproduction(runs: usize, threads: usize) -> CheckOutcome {
    let start = Instant::now();
    let name = "fig2 reproduction";
    let config = ExperimentConfig {
        runs,
        ..presets::fig2()
    };
    match compare(&config, 20, threads) {
        Err(e) => CheckOutcome::new(name, false, e),
        Ok(c) => {
            let (vs_classic, vs_spu) = (c.classic / c.aging, c.spu / c.aging);
            let passed =
                c.aging < c.spu && c.aging < c.classic && vs_classic >= 2.5 && vs_spu >= 1.8;
            CheckOutcome::new(
                name,
                passed,
                format!(
                    "n=20, {runs} runs: mean evals classic {:.0}, spu {:.0}, aging {:.0}; speed-up {:.2}x vs classic (>= 2.5), {:.2}x vs spu (>= 1.8), {}",
                    c.classic, c.spu, c.aging, vs_classic, vs_spu, elapsed(start)
                ),
            )
        }
    }
}

/// mOJZJ, `m = 4`, `k = 3`, `n = 16`, `runs` runs per algorithm: aging needs
/// fewer evaluations than both baselines and at least 1.5 times fewer than
/// classic.
pub fn fig3_reproduction(runs: usize, threads: usize) -> CheckOutcome {
    let start = Instant::now();
    let name = "fig3 reproduction";
    let config = ExperimentConfig {
        runs,
        ..presets::fig3()
    };
    match compare(&config, 16, threads) {
        Err(e) => CheckOutcome::new(name, false, e),
        Ok(c) => {
            let (vs_classic, vs_spu) = (c.classic / c.aging, c.spu / c.aging);
            let passed = c.aging < c.spu && c.aging < c.classic && vs_classic >= 1.5;
            CheckOutcome::new(
                name,
                passed,
                format!(
                    "n=16, {runs} runs: mean evals classic {:.0}, spu {:.0}, aging {:.0}; speed-up {:.2}x vs classic (>= 1.5), {:.2}x vs spu, {}",
                    c.classic, c.spu, c.aging, vs_classic, vs_spu, elapsed(start)
                ),
            )
        }
    }
}

/// Aging on OJZJ with `k = 4`, `n ∈ {10, 15, 20}`: mean iterations stay
/// below 100 times the closed-form bound and increase with `n`.
pub fn runtime_bound_monitor(runs: usize, threads: usize) -> CheckOutcome {
    let start = Instant::now();
    let name = "runtime bound monitor";
    let sizes = [10usize, 15, 20];
    let config = ExperimentConfig {
        n: sizes.to_vec(),
        algorithms: vec![Algorithm::Aging],
        runs,
        ..presets::fig2()
    };
    let records = match run_experiment(&config, threads) {
        Ok(r) => r,
        Err(e) => return CheckOutcome::new(name, false, e.to_string()),
    };
    let summaries = summarize(&records);
    let mut means = Vec::new();
    let mut within_bound = true;
    let mut parts = Vec::new();
    for n in sizes {
        let spec = ProblemSpec::ojzj(n, 4).expect("valid instance");
        let (mu, tau) = default_parameters(&spec);
        let bound = aging_runtime_bound(&spec, mu, tau);
        let cell = find(&summaries, Algorithm::Aging, n);
        let mean = cell
            .filter(|s| s.failures == 0)
            .and_then(|s| s.mean_iterations);
        match mean {
            Some(m) => {
                within_bound &= m <= 100.0 * bound;
                parts.push(format!("n={n}: {m:.0} iters vs bound {bound:.3e}"));
                means.push(m);
            }
            None => {
                within_bound = false;
                parts.push(format!("n={n}: failed runs"));
            }
        }
    }
    let increasing = means.len() == sizes.len() && means.windows(2).all(|w| w[0] < w[1]);
    CheckOutcome::new(
        name,
        within_bound && increasing,
        format!(
            "{}; within 100x bound {within_bound}, increasing {increasing}, {}",
            parts.join(", "),
            elapsed(start)
        ),
    )
}

/// The same configuration written by a 1-thread and an 8-thread pool gives
/// byte-identical CSV files. Files are written inside `dir`.
pub fn determinism(dir: &Path, master_seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let name = "determinism";
    let configs = [
        ExperimentConfig {
            n: vec![8, 10],
            k: 2,
            runs: 6,
            master_seed,
            ..presets::fig2()
        },
        ExperimentConfig {
            kind: ProblemKind::Mojzj,
            n: vec![8],
            m: 4,
            k: 1,
            runs: 4,
            master_seed,
            ..presets::fig2()
        },
    ];
    let mut rows = 0;
    for (i, config) in configs.iter().enumerate() {
        let mut bytes = Vec::new();
        for threads in [1, 8] {
            let path = dir.join(format!("determinism-{i}-{threads}.csv"));
            let _ = std::fs::remove_file(&path);
            if let Err(e) = run_experiment_to(config, &path, threads, |_| rows += 1) {
                return CheckOutcome::new(name, false, e.to_string());
            }
            match std::fs::read(&path) {
                Ok(b) => bytes.push(b),
                Err(e) => {
                    return CheckOutcome::new(name, false, format!("{}: {e}", path.display()))
                }
            }
        }
        if bytes[0] != bytes[1] {
            return CheckOutcome::new(
                name,
                false,
                format!("config {i}: 1-thread and 8-thread CSVs differ"),
            );
        }
    }
    CheckOutcome::new(
        name,
        true,
        format!(
            "{rows} rows at 1 and 8 threads, identical bytes, {}",
            elapsed(start)
        ),
    )
}

/// Every check that finishes in seconds.
pub fn quick_suite(dir: &Path, master_seed: u64) -> Vec<CheckOutcome> {
    vec![
        benchmark_oracle(),
        hypervolume_oracle(master_seed),
        sorting_oracle(master_seed),
        coverage_invariant(master_seed),
        degenerate_equivalence(master_seed),
        determinism(dir, master_seed),
    ]
}

/// Quick checks plus the runtime comparisons at their full run counts.
pub fn full_suite(dir: &Path, master_seed: u64, threads: usize) -> Vec<CheckOutcome> {
    let mut out = quick_suite(dir, master_seed);
    out.push(fig2_reproduction(50, threads));
    out.push(fig3_reproduction(20, threads));
    out.push(runtime_bound_monitor(20, threads));
    out
}
