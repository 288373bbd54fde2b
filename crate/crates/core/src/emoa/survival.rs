use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::seq::index;
use rand::Rng;

use super::population::{mutate_in_place, Individual, Population};
use super::Strategy;
use crate::benchmark::ProblemSpec;
use crate::error::{Error, Result};
use crate::hypervolume::{antichain_contributions, argmin, is_degenerate, ReferencePoint};
use crate::objective::weakly_dominates_unchecked;

/// What happened in one generation.
///
/// When the offspring survives it is the last member of the new population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    /// Index of the selected parent in the previous population.
    pub parent: usize,
    /// Size of the multiset survival selection was applied to.
    pub candidates: usize,
    /// Size of the least-contributor set `D`.
    pub least_contributors: usize,
    /// The individual that was discarded.
    pub removed: Individual,
    /// Whether the discarded individual was this generation's offspring.
    pub removed_offspring: bool,
}

impl StepReport {
    /// This generation's offspring, given the population after the step.
    pub fn offspring<'a>(&'a self, pop: &'a Population) -> &'a Individual {
        if self.removed_offspring {
            &self.removed
        } else {
            pop.members.last().expect("offspring survived")
        }
    }
}

/// One generation of the original SMS-EMOA.
pub fn classic_step<R: Rng + ?Sized>(
    pop: &mut Population,
    spec: &ProblemSpec,
    r: &ReferencePoint,
    rng: &mut R,
) -> Result<StepReport> {
    step(pop, spec, r, Strategy::Classic, rng)
}

/// One generation with the stochastic population update.
pub fn spu_step<R: Rng + ?Sized>(
    pop: &mut Population,
    spec: &ProblemSpec,
    r: &ReferencePoint,
    rng: &mut R,
) -> Result<StepReport> {
    step(pop, spec, r, Strategy::StochasticUpdate, rng)
}

/// One generation with the aging strategy.
pub fn aging_step<R: Rng + ?Sized>(
    pop: &mut Population,
    spec: &ProblemSpec,
    r: &ReferencePoint,
    tau: u64,
    rng: &mut R,
) -> Result<StepReport> {
    step(pop, spec, r, Strategy::Aging { tau }, rng)
}

/// One generation: select a parent, mutate, pick the survival candidates for
/// `strategy`, drop one least hypervolume contributor of their last front, and
/// age every survivor by one.
///
/// On error the population is left unchanged.
pub fn step<R: Rng + ?Sized>(
    pop: &mut Population,
    spec: &ProblemSpec,
    r: &ReferencePoint,
    strategy: Strategy,
    rng: &mut R,
) -> Result<StepReport> {
    step_with(pop, spec, r, strategy, rng, &mut Scratch::default())
}

/// Reusable buffers so the generation loop does not allocate per step.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    candidates: Vec<usize>,
    order: Vec<usize>,
    // per candidate position
    group_of: Vec<u32>,
    // per group of equal vectors
    first: Vec<usize>,
    count: Vec<u32>,
    keys: Vec<u64>,
    sums: Vec<i128>,
    depth: Vec<u32>,
    in_d: Vec<bool>,
    topo: Vec<(Reverse<i128>, u32)>,
    last: Vec<usize>,
    cells: Vec<(u32, u32)>,
    stamp: u32,
    d: Vec<usize>,
}

pub(crate) fn step_with<R: Rng + ?Sized>(
    pop: &mut Population,
    spec: &ProblemSpec,
    r: &ReferencePoint,
    strategy: Strategy,
    rng: &mut R,
    scratch: &mut Scratch,
) -> Result<StepReport> {
    let mu = pop.members.len();
    if mu == 0 {
        return Err(Error::InvalidParameters("population is empty".into()));
    }
    let parent = rng.gen_range(0..mu);
    let mut genotype = pop.members[parent].genotype().clone();
    mutate_in_place(&mut genotype, rng);
    let offspring = Individual::new(genotype, spec, 0)?;
    pop.members.push(offspring);

    let candidates = &mut scratch.candidates;
    candidates.clear();
    match strategy {
        Strategy::Classic => candidates.extend(0..=mu),
        Strategy::StochasticUpdate => {
            candidates.extend(index::sample(rng, mu + 1, mu.div_ceil(2)).iter());
            candidates.sort_unstable();
        }
        Strategy::Aging { tau } => {
            candidates.extend((0..=mu).filter(|&i| pop.members[i].age() >= tau))
        }
    }
    if candidates.is_empty() {
        pop.members.pop();
        return Err(Error::NoEligibleIndividuals);
    }
    let candidate_count = candidates.len();

    let candidates = core::mem::take(&mut scratch.candidates);
    let packing = Packing::for_range(spec.m(), spec.max_objective());
    least_contributors_with(&pop.members, &candidates, r, packing, scratch);
    scratch.candidates = candidates;
    let d = &scratch.d;
    let chosen = if d.len() > 1 {
        d[rng.gen_range(0..d.len())]
    } else {
        d[0]
    };
    let removed = pop.members.remove(chosen);
    for m in &mut pop.members {
        m.grow_older();
    }
    Ok(StepReport {
        parent,
        candidates: candidate_count,
        least_contributors: d.len(),
        removed,
        removed_offspring: chosen == mu,
    })
}

/// Largest direct-indexed table used to group equal objective vectors.
const MAX_CELLS: usize = 1 << 20;

/// Objective vectors with coordinates in `0..=max` packed into one word, one
/// field per coordinate plus a spare guard bit, so that componentwise `>=`
/// costs a single subtraction. Vectors are also numbered densely for a
/// direct-indexed grouping table.
#[derive(Debug, Clone, Copy)]
struct Packing {
    m: usize,
    max: i64,
    width: u32,
    guards: u64,
    radix: usize,
    cells: usize,
}

impl Packing {
    fn for_range(m: usize, max: i64) -> Option<Self> {
        if m == 0 || max < 0 {
            return None;
        }
        let bits = (64 - (max as u64).leading_zeros()).max(1);
        let width = bits + 1;
        if m as u32 * width > 64 || width >= 64 {
            return None;
        }
        let radix = max as usize + 1;
        let cells = radix.checked_pow(m as u32).filter(|&c| c <= MAX_CELLS)?;
        let guards = (0..m as u32).fold(0u64, |g, j| g | 1 << (j * width + bits));
        Some(Self {
            m,
            max,
            width,
            guards,
            radix,
            cells,
        })
    }

    /// Tightest packing for the given vectors, if any applies.
    #[cfg(test)]
    fn fitting(members: &[Individual], candidates: &[usize]) -> Option<Self> {
        let vectors = || candidates.iter().map(|&i| members[i].objectives());
        let min = vectors().flat_map(|v| v.iter().copied()).min()?;
        let max = vectors().flat_map(|v| v.iter().copied()).max()?;
        (min >= 0).then(|| Self::for_range(members[candidates[0]].objectives().len(), max))?
    }

    #[cfg(test)]
    fn key(&self, v: &[i64]) -> u64 {
        v.iter().fold(0u64, |acc, &x| acc << self.width | x as u64)
    }

    fn weakly_dominates(&self, u: u64, v: u64) -> bool {
        ((u | self.guards) - v) & self.guards == self.guards
    }
}

/// `D` for the candidate multiset: members of the last non-dominated front
/// with minimal hypervolume contribution, ascending by member index.
#[cfg(test)]
pub(crate) fn least_contributors(
    members: &[Individual],
    candidates: &[usize],
    r: &ReferencePoint,
) -> Vec<usize> {
    let mut scratch = Scratch::default();
    let packing = Packing::fitting(members, candidates);
    least_contributors_with(members, candidates, r, packing, &mut scratch);
    scratch.d
}

/// Fills `scratch.d` with `D`. `candidates` must be ascending.
///
/// Duplicates share a front, so ranking runs on distinct vectors. Inside the
/// last front the distinct vectors form an antichain, hence a member
/// contributes zero iff its vector occurs more than once or its box is
/// degenerate. Only if nobody contributes zero are contributions measured.
fn least_contributors_with(
    members: &[Individual],
    candidates: &[usize],
    r: &ReferencePoint,
    packing: Option<Packing>,
    scratch: &mut Scratch,
) {
    debug_assert!(candidates.windows(2).all(|w| w[0] < w[1]));
    let packing = packing.filter(|&p| group_packed(members, candidates, p, scratch));
    if packing.is_none() {
        group_sorted(members, candidates, scratch);
    }
    let Scratch {
        group_of,
        first,
        count,
        keys,
        sums,
        depth,
        in_d,
        topo,
        last,
        d,
        ..
    } = scratch;
    let groups = first.len();
    let rep = |g: usize| members[first[g]].objectives().as_slice();

    // The last front holds the vectors ending the longest domination chains.
    // Dominating vectors have strictly larger coordinate sums, so visiting
    // groups by descending sum sees every dominator before what it dominates.
    // Groups hold distinct vectors, so weak dominance is strict here.
    let dominates = |a: usize, b: usize| match packing {
        Some(p) => p.weakly_dominates(keys[a], keys[b]),
        None => weakly_dominates_unchecked(rep(a), rep(b)),
    };
    topo.clear();
    topo.extend(
        sums.iter()
            .enumerate()
            .map(|(g, &s)| (Reverse(s), g as u32)),
    );
    topo.sort_unstable();
    depth.clear();
    depth.resize(groups, 0);
    let mut deepest = 0;
    for pos in 0..groups {
        let b = topo[pos].1 as usize;
        let mut chain = 0;
        for &(_, a) in &topo[..pos] {
            let a = a as usize;
            if depth[a] >= chain && dominates(a, b) {
                chain = depth[a] + 1;
            }
        }
        depth[b] = chain;
        deepest = deepest.max(chain);
    }
    last.clear();
    last.extend((0..groups).filter(|&g| depth[g] == deepest));

    in_d.clear();
    in_d.resize(groups, false);
    let mut zero = false;
    for &g in last.iter() {
        if count[g] > 1 || is_degenerate(rep(g), r.as_slice()) {
            in_d[g] = true;
            zero = true;
        }
    }
    d.clear();
    if zero {
        d.extend(
            candidates
                .iter()
                .zip(group_of.iter())
                .filter(|&(_, &g)| in_d[g as usize])
                .map(|(&i, _)| i),
        );
    } else {
        let points: Vec<&[i64]> = last.iter().map(|&g| rep(g)).collect();
        let contributions = antichain_contributions(&points, r.as_slice());
        d.extend(
            argmin(&contributions)
                .into_iter()
                .map(|pos| first[last[pos]]),
        );
        d.sort_unstable();
    }
}

fn clear_groups(scratch: &mut Scratch) {
    scratch.group_of.clear();
    scratch.first.clear();
    scratch.count.clear();
    scratch.keys.clear();
    scratch.sums.clear();
}

/// Groups equal vectors through the direct-indexed table. Returns `false`,
/// leaving the groups unusable, if some vector does not fit the packing.
fn group_packed(
    members: &[Individual],
    candidates: &[usize],
    p: Packing,
    scratch: &mut Scratch,
) -> bool {
    clear_groups(scratch);
    let Scratch {
        group_of,
        first,
        count,
        keys,
        sums,
        cells,
        stamp,
        ..
    } = scratch;
    // A cell belongs to this call only if it carries the current stamp.
    *stamp = stamp.wrapping_add(1);
    if *stamp == 0 {
        cells.fill((0, 0));
        *stamp = 1;
    }
    if cells.len() < p.cells {
        cells.resize(p.cells, (0, 0));
    }
    for &i in candidates {
        let v = members[i].objectives().as_slice();
        if v.len() != p.m {
            return false;
        }
        let (mut key, mut cell, mut sum) = (0u64, 0usize, 0i64);
        for &x in v {
            if !(0..=p.max).contains(&x) {
                return false;
            }
            key = key << p.width | x as u64;
            cell = cell * p.radix + x as usize;
            sum += x;
        }
        let slot = &mut cells[cell];
        if slot.0 != *stamp {
            *slot = (*stamp, first.len() as u32);
            first.push(i);
            count.push(0);
            keys.push(key);
            sums.push(i128::from(sum));
        }
        group_of.push(slot.1);
        count[slot.1 as usize] += 1;
    }
    true
}

/// Groups equal vectors by sorting candidate positions.
fn group_sorted(members: &[Individual], candidates: &[usize], scratch: &mut Scratch) {
    clear_groups(scratch);
    let Scratch {
        order,
        group_of,
        first,
        count,
        sums,
        ..
    } = scratch;
    let obj = |pos: usize| members[candidates[pos]].objectives().as_slice();
    order.clear();
    order.extend(0..candidates.len());
    order.sort_unstable_by(|&a, &b| obj(a).cmp(obj(b)).then(a.cmp(&b)));
    group_of.resize(candidates.len(), 0);
    for (k, &pos) in order.iter().enumerate() {
        if k == 0 || obj(pos) != obj(order[k - 1]) {
            first.push(candidates[pos]);
            count.push(0);
            sums.push(obj(pos).iter().map(|&x| i128::from(x)).sum());
        }
        let g = first.len() - 1;
        group_of[pos] = g as u32;
        count[g] += 1;
    }
}
