//! OneJumpZeroJump (OJZJ) and its many-objective block version (mOJZJ).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::hypervolume::ReferencePoint;
use crate::objective::ObjectiveVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Ojzj,
    Mojzj,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Ojzj => "ojzj",
            ProblemKind::Mojzj => "mojzj",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ojzj" => Ok(ProblemKind::Ojzj),
            "mojzj" => Ok(ProblemKind::Mojzj),
            other => Err(Error::InvalidSpec(format!("unknown benchmark {other:?}"))),
        }
    }
}

/// A validated benchmark instance.
///
/// OJZJ always has `m = 2`. For mOJZJ the `n` bits are split into `m/2`
/// consecutive blocks of length `n' = 2n/m`, each scored by `OJZJ_{n',k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    kind: ProblemKind,
    n: usize,
    k: usize,
    m: usize,
}

impl ProblemSpec {
    /// Requires `1 ≤ k ≤ n/2`.
    pub fn ojzj(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!(
                "OJZJ needs n >= 2, got n = {n}"
            )));
        }
        if k < 1 || 2 * k > n {
            return Err(Error::InvalidSpec(format!(
                "OJZJ needs 1 <= k <= n/2, got n = {n}, k = {k}"
            )));
        }
        Ok(Self {
            kind: ProblemKind::Ojzj,
            n,
            k,
            m: 2,
        })
    }

    /// Requires even `m ≥ 2`, `m/2 | n` and `1 ≤ k ≤ n'/2`.
    pub fn mojzj(n: usize, m: usize, k: usize) -> Result<Self> {
        if m < 2 || m % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "mOJZJ needs an even number of objectives, got m = {m}"
            )));
        }
        let blocks = m / 2;
        if n == 0 || n % blocks != 0 {
            return Err(Error::InvalidSpec(format!(
                "mOJZJ needs n divisible by m/2, got n = {n}, m = {m}"
            )));
        }
        let block_len = n / blocks;
        if k < 1 || 2 * k > block_len {
            return Err(Error::InvalidSpec(format!(
                "mOJZJ needs 1 <= k <= n'/2 = {}, got k = {k}",
                block_len / 2
            )));
        }
        Ok(Self {
            kind: ProblemKind::Mojzj,
            n,
            k,
            m,
        })
    }

    pub fn new(kind: ProblemKind, n: usize, m: usize, k: usize) -> Result<Self> {
        match kind {
            ProblemKind::Ojzj if m != 2 => Err(Error::InvalidSpec(format!(
                "OJZJ has exactly two objectives, got m = {m}"
            ))),
            ProblemKind::Ojzj => Self::ojzj(n, k),
            ProblemKind::Mojzj => Self::mojzj(n, m, k),
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `m' = m/2`, the number of blocks (1 for OJZJ).
    pub fn blocks(&self) -> usize {
        self.m / 2
    }

    /// `n' = 2n/m` (equals `n` for OJZJ).
    pub fn block_len(&self) -> usize {
        self.n / self.blocks()
    }

    /// Upper bound on every objective value: block length plus `k`.
    pub fn max_objective(&self) -> i64 {
        (self.block_len() + self.k) as i64
    }

    pub fn evaluate(&self, x: &BitString) -> Result<ObjectiveVector> {
        match self.kind {
            ProblemKind::Ojzj => ojzj_eval(x, self),
            ProblemKind::Mojzj => mojzj_eval(x, self),
        }
    }

    /// `(-1, …, -1)`, strictly below every benchmark value.
    pub fn reference_point(&self) -> ReferencePoint {
        ReferencePoint::uniform(self.m, -1)
    }

    /// Per-block one-counts of `x`.
    pub fn block_profile(&self, x: &BitString) -> Vec<usize> {
        let len = self.block_len();
        (0..self.blocks())
            .map(|b| x.ones_in(b * len..(b + 1) * len))
            .collect()
    }

    fn check_len(&self, x: &BitString) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ProblemKind::Ojzj => write!(f, "OJZJ(n={}, k={})", self.n, self.k),
            ProblemKind::Mojzj => {
                write!(f, "mOJZJ(n={}, m={}, k={})", self.n, self.m, self.k)
            }
        }
    }
}

/// `OJZJ_{len,k}` of a string with `ones` set bits.
#[inline]
pub(crate) fn ojzj_pair(ones: usize, len: usize, k: usize) -> (i64, i64) {
    let zeros = len - ones;
    let jump = |c: usize| -> i64 {
        if c <= len - k || c == len {
            (k + c) as i64
        } else {
            (len - c) as i64
        }
    };
    (jump(ones), jump(zeros))
}

pub fn ojzj_eval(x: &BitString, spec: &ProblemSpec) -> Result<ObjectiveVector> {
    if spec.kind != ProblemKind::Ojzj {
        return Err(Error::InvalidSpec(format!(
            "{spec} is not an OJZJ instance"
        )));
    }
    spec.check_len(x)?;
    let (f1, f2) = ojzj_pair(x.ones_count(), spec.n, spec.k);
    Ok(ObjectiveVector::new(alloc::vec![f1, f2]))
}

/// Block `i` (0-based) contributes objectives `2i` and `2i + 1` in OJZJ order.
pub fn mojzj_eval(x: &BitString, spec: &ProblemSpec) -> Result<ObjectiveVector> {
    if spec.kind != ProblemKind::Mojzj {
        return Err(Error::InvalidSpec(format!(
            "{spec} is not an mOJZJ instance"
        )));
    }
    spec.check_len(x)?;
    let len = spec.block_len();
    let mut values = Vec::with_capacity(spec.m);
    for b in 0..spec.blocks() {
        let (f1, f2) = ojzj_pair(x.ones_in(b * len..(b + 1) * len), len, spec.k);
        values.push(f1);
        values.push(f2);
    }
    Ok(ObjectiveVector::new(values))
}

/// The closed-form Pareto front of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFrontTarget {
    points: BTreeSet<ObjectiveVector>,
}

impl ParetoFrontTarget {
    pub fn points(&self) -> &BTreeSet<ObjectiveVector> {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.points.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ObjectiveVector> {
        self.points.iter()
    }
}

/// Block values `a ∈ [2k..n'] ∪ {k, n'+k}`, each paired with `n' + 2k − a`.
fn block_front(len: usize, k: usize) -> Vec<(i64, i64)> {
    let (len, k) = (len as i64, k as i64);
    core::iter::once(k)
        .chain(2 * k..=len)
        .chain(core::iter::once(len + k))
        .map(|a| (a, len + 2 * k - a))
        .collect()
}

pub fn analytic_pareto_front(spec: &ProblemSpec) -> Result<ParetoFrontTarget> {
    if 2 * spec.k > spec.block_len() {
        return Err(Error::InvalidSpec(format!(
            "gap parameter too large for {spec}"
        )));
    }
    let per_block = block_front(spec.block_len(), spec.k);
    let mut partial: Vec<Vec<i64>> = alloc::vec![Vec::new()];
    for _ in 0..spec.blocks() {
        let mut next = Vec::with_capacity(partial.len() * per_block.len());
        for prefix in &partial {
            for &(a, b) in &per_block {
                let mut v = prefix.clone();
                v.push(a);
                v.push(b);
                next.push(v);
            }
        }
        partial = next;
    }
    Ok(ParetoFrontTarget {
        points: partial.into_iter().map(ObjectiveVector::new).collect(),
    })
}

/// `M̄`: exactly `n − 2k + 3` for OJZJ, the bound `(n'+1)^{m/2}` for mOJZJ.
pub fn max_antichain_bound(spec: &ProblemSpec) -> u64 {
    match spec.kind {
        ProblemKind::Ojzj => (spec.n - 2 * spec.k + 3) as u64,
        ProblemKind::Mojzj => (spec.block_len() as u64 + 1).pow(spec.blocks() as u32),
    }
}
