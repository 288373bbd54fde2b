//! The steady-state SMS-EMOA loop and its three survival strategies.
//!
//! Every generation draws random numbers in a fixed order, identical across
//! strategies:
//!
//! 1. one parent index,
//! 2. `n` Bernoulli(1/n) mutation draws,
//! 3. the survival subset (stochastic update only),
//! 4. one tie-break index, only when more than one least contributor exists.
//!
//! With this schedule `Aging { tau: 0 }` and `Classic` replay identically.

mod coverage;
mod population;
mod run;
mod survival;

use core::fmt;
use core::str::FromStr;

use alloc::format;

pub use coverage::{milestone_profiles, CoverageTracker, MilestoneProfiles, MilestoneTracker};
pub use population::{bitwise_mutation, sample_flip_mask, Individual, Population};
pub use run::{run_until_covered, run_with_observer, Generation, RunResult};
pub use survival::{aging_step, classic_step, spu_step, step, StepReport};

use crate::benchmark::{max_antichain_bound, ProblemSpec};
use crate::error::Error;

/// Survival strategy of the SMS-EMOA.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Remove a least hypervolume contributor of the last front of `P ∪ {x'}`.
    Classic,
    /// Apply the classic removal to `⌊(μ+1)/2⌋` members sampled without
    /// replacement from `P ∪ {x'}`; the rest survive untouched.
    StochasticUpdate,
    /// Only members of age at least `tau` take part in the classic removal.
    /// Offspring are born with age 0, the initial population with age `tau`.
    Aging { tau: u64 },
}

impl Strategy {
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::Classic => "classic",
            Strategy::StochasticUpdate => "stochastic-update",
            Strategy::Aging { .. } => "aging",
        }
    }

    pub fn tau(&self) -> Option<u64> {
        match self {
            Strategy::Aging { tau } => Some(*tau),
            _ => None,
        }
    }

    pub(crate) fn initial_age(&self) -> u64 {
        self.tau().unwrap_or(0)
    }

    /// Whether `μ` is large enough for the no-loss guarantee: `μ ≥ M̄ + 1`
    /// for classic, `μ ≥ M̄ + 1 + τ` for aging. The stochastic update has no
    /// such guarantee.
    pub fn guarantees_survival(&self, spec: &ProblemSpec, mu: usize) -> bool {
        let bound = max_antichain_bound(spec);
        match self {
            Strategy::Classic => mu as u64 > bound,
            Strategy::Aging { tau } => mu as u64 > bound.saturating_add(*tau),
            Strategy::StochasticUpdate => false,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Aging { tau } => write!(f, "aging(tau={tau})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Accepts `classic`, `stochastic-update` (or `spu`), and `aging` / `aging:<tau>`.
/// A bare `aging` parses with `tau = 0`; callers substitute their default.
impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "classic" => Ok(Strategy::Classic),
            "stochastic-update" | "spu" => Ok(Strategy::StochasticUpdate),
            "aging" => Ok(Strategy::Aging { tau: 0 }),
            other => match other.strip_prefix("aging:") {
                Some(tau) => tau
                    .parse()
                    .map(|tau| Strategy::Aging { tau })
                    .map_err(|_| Error::InvalidParameters(format!("bad tau in {other:?}"))),
                None => Err(Error::InvalidParameters(format!(
                    "unknown strategy {other:?}"
                ))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_strategies() {
        assert_eq!("classic".parse::<Strategy>().unwrap(), Strategy::Classic);
        assert_eq!(
            "SPU".parse::<Strategy>().unwrap(),
            Strategy::StochasticUpdate
        );
        assert_eq!(
            "aging:6".parse::<Strategy>().unwrap(),
            Strategy::Aging { tau: 6 }
        );
        assert!("aging:x".parse::<Strategy>().is_err());
        assert!("nsga2".parse::<Strategy>().is_err());
    }

    #[test]
    fn survival_guarantee_thresholds() {
        let spec = ProblemSpec::ojzj(10, 4).unwrap();
        // M̄ = 5
        assert!(Strategy::Classic.guarantees_survival(&spec, 6));
        assert!(!Strategy::Classic.guarantees_survival(&spec, 5));
        assert!(Strategy::Aging { tau: 6 }.guarantees_survival(&spec, 12));
        assert!(!Strategy::Aging { tau: 7 }.guarantees_survival(&spec, 12));
        assert!(!Strategy::StochasticUpdate.guarantees_survival(&spec, 100));
    }
}
