//! Default population size and age threshold for each benchmark.

use agemoa_core::{max_antichain_bound, ProblemKind, ProblemSpec};

/// `(μ, τ)` used when a configuration does not override them.
///
/// OJZJ uses `μ = 2(n − 2k + 4)`, mOJZJ uses `μ = 2((n′ + 1)^{m/2} + 1)`, and
/// both use `τ = μ/2`. Both formulas always give an even `μ`.
pub fn default_parameters(spec: &ProblemSpec) -> (usize, u64) {
    let mu = match spec.kind() {
        ProblemKind::Ojzj => 2 * (spec.n() - 2 * spec.k() + 4),
        ProblemKind::Mojzj => 2 * ((spec.block_len() + 1).pow(spec.blocks() as u32) + 1),
    };
    (mu, (mu / 2) as u64)
}

/// Whether `μ ≥ M̄ + 1 + τ`, the population size under which aging provably
/// never loses a Pareto front point.
pub fn aging_hypothesis_holds(spec: &ProblemSpec, mu: usize, tau: u64) -> bool {
    mu as u64 >= max_antichain_bound(spec) + 1 + tau
}
