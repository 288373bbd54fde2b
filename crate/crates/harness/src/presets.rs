//! Built-in sweeps for the two runtime-comparison figures.

use agemoa_core::ProblemKind;

use crate::algorithm::Algorithm;
use crate::config::ExperimentConfig;

pub const DEFAULT_MASTER_SEED: u64 = 20_240_001;

/// OJZJ with `k = 4`, `n ∈ {10, 15, 20, 25, 30}`, 50 runs per cell.
pub fn fig2() -> ExperimentConfig {
    ExperimentConfig {
        kind: ProblemKind::Ojzj,
        n: vec![10, 15, 20, 25, 30],
        k: 4,
        m: 2,
        algorithms: Algorithm::ALL.to_vec(),
        mu: None,
        tau: None,
        runs: 50,
        master_seed: DEFAULT_MASTER_SEED,
        max_iterations: None,
        output: None,
    }
}

/// mOJZJ with `m = 4`, `k = 3`, `n ∈ {12, 16, 20, 24, 28}`, 20 runs per cell.
pub fn fig3() -> ExperimentConfig {
    ExperimentConfig {
        kind: ProblemKind::Mojzj,
        n: vec![12, 16, 20, 24, 28],
        k: 3,
        m: 4,
        runs: 20,
        ..fig2()
    }
}

pub fn by_name(name: &str) -> Option<ExperimentConfig> {
    match name {
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        _ => None,
    }
}
