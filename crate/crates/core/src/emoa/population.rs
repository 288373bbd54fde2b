use alloc::vec::Vec;

use rand::distributions::{Bernoulli, Distribution};
use rand::Rng;

use crate::benchmark::ProblemSpec;
use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::ObjectiveVector;

/// A genotype with its cached objective vector and age in generations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    genotype: BitString,
    objectives: ObjectiveVector,
    age: u64,
}

impl Individual {
    /// Evaluates `genotype` once; the result is cached for the individual's
    /// lifetime.
    pub fn new(genotype: BitString, spec: &ProblemSpec, age: u64) -> Result<Self> {
        let objectives = spec.evaluate(&genotype)?;
        Ok(Self {
            genotype,
            objectives,
            age,
        })
    }

    #[cfg(test)]
    pub(crate) fn from_parts(genotype: BitString, objectives: ObjectiveVector, age: u64) -> Self {
        Self {
            genotype,
            objectives,
            age,
        }
    }

    pub fn genotype(&self) -> &BitString {
        &self.genotype
    }

    pub fn objectives(&self) -> &ObjectiveVector {
        &self.objectives
    }

    pub fn age(&self) -> u64 {
        self.age
    }

    pub(crate) fn grow_older(&mut self) {
        self.age = self.age.saturating_add(1);
    }
}

/// The `μ` members of the current generation. Duplicates are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    pub(crate) members: Vec<Individual>,
}

impl Population {
    /// `μ` independent uniform genotypes, all with the given age.
    pub fn random<R: Rng + ?Sized>(
        spec: &ProblemSpec,
        mu: usize,
        age: u64,
        rng: &mut R,
    ) -> Result<Self> {
        if mu == 0 {
            return Err(Error::InvalidParameters(
                "population size must be positive".into(),
            ));
        }
        let members = (0..mu)
            .map(|_| Individual::new(BitString::random(spec.n(), rng), spec, age))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { members })
    }

    pub fn from_members(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameters(
                "population size must be positive".into(),
            ));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    /// `μ`
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Individual> {
        self.members.iter()
    }
}

fn flip_coin(n: usize) -> Bernoulli {
    Bernoulli::from_ratio(1, n as u32).expect("1/n is a valid probability")
}

/// One Bernoulli(1/n) draw per position; set bits mark positions to flip.
pub fn sample_flip_mask<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitString {
    let mut mask = BitString::zeros(n);
    if n == 0 {
        return mask;
    }
    let coin = flip_coin(n);
    for i in 0..n {
        if coin.sample(rng) {
            mask.flip(i);
        }
    }
    mask
}

/// Same draws as [`sample_flip_mask`], flipping `x` directly.
pub(crate) fn mutate_in_place<R: Rng + ?Sized>(x: &mut BitString, rng: &mut R) {
    let n = x.len();
    if n == 0 {
        return;
    }
    let coin = flip_coin(n);
    for i in 0..n {
        if coin.sample(rng) {
            x.flip(i);
        }
    }
}

/// Standard bit-wise mutation: each bit flips independently with
/// probability `1/n`. Consumes exactly `n` Bernoulli draws.
pub fn bitwise_mutation<R: Rng + ?Sized>(x: &BitString, rng: &mut R) -> BitString {
    let mask = sample_flip_mask(x.len(), rng);
    x.xor(&mask).expect("mask has the parent's length")
}
