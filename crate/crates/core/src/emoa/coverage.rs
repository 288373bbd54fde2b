use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::benchmark::{ParetoFrontTarget, ProblemKind, ProblemSpec};
use crate::error::{Error, Result};
use crate::objective::ObjectiveVector;

#[derive(Debug, Clone, Default)]
struct FrontSlot {
    holders: u32,
    first_hit: Option<u64>,
}

/// Tracks which Pareto front points the population currently holds.
///
/// Membership is counted per front point, so the tracker knows at all times
/// how many front points are covered and how often a covered point was lost
/// again (which the aging and classic strategies never do when `μ` is large
/// enough).
#[derive(Debug, Clone)]
pub struct CoverageTracker {
    slots: BTreeMap<ObjectiveVector, FrontSlot>,
    covered: usize,
    losses: u64,
}

impl CoverageTracker {
    pub fn new(target: &ParetoFrontTarget) -> Self {
        Self {
            slots: target
                .iter()
                .map(|p| (p.clone(), FrontSlot::default()))
                .collect(),
            covered: 0,
            losses: 0,
        }
    }

    /// Registers an individual with these objectives entering the population.
    pub fn add(&mut self, v: &[i64], iteration: u64) {
        if let Some(slot) = self.slots.get_mut(v) {
            if slot.holders == 0 {
                self.covered += 1;
                slot.first_hit.get_or_insert(iteration);
            }
            slot.holders += 1;
        }
    }

    /// Registers an individual leaving the population. Returns `true` when
    /// this removed the last holder of a front point.
    pub fn remove(&mut self, v: &[i64]) -> bool {
        match self.slots.get_mut(v) {
            Some(slot) if slot.holders > 0 => {
                slot.holders -= 1;
                if slot.holders == 0 {
                    self.covered -= 1;
                    self.losses += 1;
                    true
                } else {
                    false
                }
            }
            _ => false,
        }
    }

    /// Number of front points currently held.
    pub fn covered(&self) -> usize {
        self.covered
    }

    pub fn target_size(&self) -> usize {
        self.slots.len()
    }

    pub fn is_complete(&self) -> bool {
        self.covered == self.slots.len()
    }

    /// How many times a held front point disappeared from the population.
    pub fn losses(&self) -> u64 {
        self.losses
    }

    pub fn covered_points(&self) -> impl Iterator<Item = &ObjectiveVector> {
        self.slots
            .iter()
            .filter(|(_, s)| s.holders > 0)
            .map(|(p, _)| p)
    }

    /// Iteration at which each front point was first held.
    pub fn first_hits(&self) -> impl Iterator<Item = (&ObjectiveVector, Option<u64>)> {
        self.slots.iter().map(|(p, s)| (p, s.first_hit))
    }
}

/// Block one-count profiles of the two mOJZJ milestones: `K` (every block has
/// exactly `k` ones or `k` zeros) and `C` (additionally all-ones or all-zeros
/// blocks). `K ⊆ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilestoneProfiles {
    pub k: BTreeSet<Vec<usize>>,
    pub c: BTreeSet<Vec<usize>>,
}

pub fn milestone_profiles(spec: &ProblemSpec) -> Result<MilestoneProfiles> {
    if spec.kind() != ProblemKind::Mojzj {
        return Err(Error::InvalidSpec(format!(
            "milestones are defined for mOJZJ only, got {spec}"
        )));
    }
    let len = spec.block_len();
    let k = spec.k();
    Ok(MilestoneProfiles {
        k: cartesian(&[k, len - k], spec.blocks()),
        c: cartesian(&[0, k, len - k, len], spec.blocks()),
    })
}

fn cartesian(values: &[usize], blocks: usize) -> BTreeSet<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..blocks {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().collect()
}

/// First iteration at which the population simultaneously holds every `K`
/// profile, and every `C` profile. Instrumentation only.
#[derive(Debug, Clone)]
pub struct MilestoneTracker {
    counts: BTreeMap<Vec<usize>, (u32, bool, bool)>,
    k_size: usize,
    c_size: usize,
    k_present: usize,
    c_present: usize,
    first_hit_k: Option<u64>,
    first_hit_c: Option<u64>,
}

impl MilestoneTracker {
    pub fn new(profiles: &MilestoneProfiles) -> Self {
        let counts = profiles
            .c
            .iter()
            .map(|p| (p.clone(), (0, profiles.k.contains(p), true)))
            .collect();
        Self {
            counts,
            k_size: profiles.k.len(),
            c_size: profiles.c.len(),
            k_present: 0,
            c_present: 0,
            first_hit_k: None,
            first_hit_c: None,
        }
    }

    pub fn add(&mut self, profile: &[usize]) {
        if let Some((n, in_k, in_c)) = self.counts.get_mut(profile) {
            if *n == 0 {
                self.k_present += *in_k as usize;
                self.c_present += *in_c as usize;
            }
            *n += 1;
        }
    }

    pub fn remove(&mut self, profile: &[usize]) {
        if let Some((n, in_k, in_c)) = self.counts.get_mut(profile) {
            if *n > 0 {
                *n -= 1;
                if *n == 0 {
                    self.k_present -= *in_k as usize;
                    self.c_present -= *in_c as usize;
                }
            }
        }
    }

    /// Records first hits for the current population state.
    pub fn observe(&mut self, iteration: u64) {
        if self.first_hit_k.is_none() && self.k_present == self.k_size {
            self.first_hit_k = Some(iteration);
        }
        if self.first_hit_c.is_none() && self.c_present == self.c_size {
            self.first_hit_c = Some(iteration);
        }
    }

    pub fn first_hit_k(&self) -> Option<u64> {
        self.first_hit_k
    }

    pub fn first_hit_c(&self) -> Option<u64> {
        self.first_hit_c
    }
}
