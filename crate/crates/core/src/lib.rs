//! Steady-state SMS-EMOA on the OneJumpZeroJump benchmark family.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the algorithmic
//! pieces: bit strings and objective vectors, the OJZJ / mOJZJ benchmarks with
//! their analytic Pareto fronts, fast non-dominated sorting, exact integer
//! hypervolume, and the evolutionary loop with three survival strategies:
//!
//! * [`Strategy::Classic`]: greedy removal of a least hypervolume contributor
//!   from the last non-dominated front,
//! * [`Strategy::StochasticUpdate`]: the same removal applied to a uniformly
//!   sampled half of the combined population,
//! * [`Strategy::Aging`]: only individuals of age at least `tau` take part in
//!   survival selection.
//!
//! Experiment orchestration and all IO live in the `agemoa` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod benchmark;
pub mod bitstring;
pub mod emoa;
mod error;
pub mod hypervolume;
pub mod objective;
pub mod ranking;
pub mod seed;

pub use benchmark::{
    analytic_pareto_front, max_antichain_bound, mojzj_eval, ojzj_eval, ParetoFrontTarget,
    ProblemKind, ProblemSpec,
};
pub use bitstring::BitString;
pub use emoa::{
    aging_step, bitwise_mutation, classic_step, milestone_profiles, run_until_covered,
    run_with_observer, spu_step, step, CoverageTracker, Individual, MilestoneProfiles, Population,
    RunResult, StepReport, Strategy,
};
pub use error::{Error, Result};
pub use hypervolume::{hv_contribution, hypervolume, min_contribution_set, ReferencePoint, Volume};
pub use objective::{strictly_dominates, weakly_dominates, ObjectiveVector};
pub use ranking::{fast_non_dominated_sort, FrontPartition};
