//! Integer objective vectors and Pareto dominance (maximization).

use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Objective values `(f_1(x), …, f_m(x))`. All objectives are maximized.
///
/// Ordering is lexicographic; it exists so vectors can key ordered maps and
/// has nothing to do with dominance.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectiveVector(Vec<i64>);

impl ObjectiveVector {
    pub fn new(values: Vec<i64>) -> Self {
        Self(values)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl AsRef<[i64]> for ObjectiveVector {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

impl Borrow<[i64]> for ObjectiveVector {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ObjectiveVector {
    fn from(values: Vec<i64>) -> Self {
        Self(values)
    }
}

impl<const M: usize> From<[i64; M]> for ObjectiveVector {
    fn from(values: [i64; M]) -> Self {
        Self(values.to_vec())
    }
}

impl fmt::Debug for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

fn check_dims(u: &[i64], v: &[i64]) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `u ⪰ v`: `u_i ≥ v_i` for every objective.
pub fn weakly_dominates(u: &[i64], v: &[i64]) -> Result<bool> {
    check_dims(u, v)?;
    Ok(weakly_dominates_unchecked(u, v))
}

/// `u ≻ v`: `u ⪰ v` and `u ≠ v`.
pub fn strictly_dominates(u: &[i64], v: &[i64]) -> Result<bool> {
    check_dims(u, v)?;
    Ok(strictly_dominates_unchecked(u, v))
}

#[inline]
pub(crate) fn weakly_dominates_unchecked(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a >= b)
}

#[inline]
pub(crate) fn strictly_dominates_unchecked(u: &[i64], v: &[i64]) -> bool {
    let mut better = false;
    for (a, b) in u.iter().zip(v) {
        if a < b {
            return false;
        }
        better |= a > b;
    }
    better
}

/// Dominance relation between two points in a single pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Dominates,
    DominatedBy,
    Equal,
    Incomparable,
}

#[inline]
pub(crate) fn relation(u: &[i64], v: &[i64]) -> Relation {
    let mut u_better = false;
    let mut v_better = false;
    for (a, b) in u.iter().zip(v) {
        if a > b {
            u_better = true;
        } else if a < b {
            v_better = true;
        }
        if u_better && v_better {
            return Relation::Incomparable;
        }
    }
    match (u_better, v_better) {
        (true, false) => Relation::Dominates,
        (false, true) => Relation::DominatedBy,
        (false, false) => Relation::Equal,
        (true, true) => Relation::Incomparable,
    }
}
