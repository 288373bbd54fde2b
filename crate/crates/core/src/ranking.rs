//! Fast non-dominated sorting.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::objective::{relation, Relation};

/// Fronts `F_1, …, F_{i*}` as lists of input indices, ascending within a front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    /// `i*`
    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    /// The critical front `F_{i*}`.
    pub fn last(&self) -> &[usize] {
        self.fronts.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn into_fronts(self) -> Vec<Vec<usize>> {
        self.fronts
    }

    /// Wraps already-computed fronts. Used by oracles that build partitions
    /// by other means; no invariants are checked.
    pub fn from_fronts(fronts: Vec<Vec<usize>>) -> Self {
        Self { fronts }
    }

    /// Front index (0-based) of every input point.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.fronts.iter().map(Vec::len).sum();
        let mut ranks = alloc::vec![0; n];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = r;
            }
        }
        ranks
    }
}

/// Deb's counts-and-dominated-lists sort, `O(m N²)`.
///
/// Equal vectors do not dominate each other and therefore share a front.
pub fn fast_non_dominated_sort<P: AsRef<[i64]>>(points: &[P]) -> Result<FrontPartition> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let m = first.as_ref().len();
    if let Some(p) = points.iter().find(|p| p.as_ref().len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: p.as_ref().len(),
        });
    }
    Ok(sort_unchecked(points))
}

pub(crate) fn sort_unchecked<P: AsRef<[i64]>>(points: &[P]) -> FrontPartition {
    let n = points.len();
    let mut dominated_by_count = alloc::vec![0usize; n];
    let mut dominates: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];

    for i in 0..n {
        for j in i + 1..n {
            match relation(points[i].as_ref(), points[j].as_ref()) {
                Relation::Dominates => {
                    dominates[i].push(j);
                    dominated_by_count[j] += 1;
                }
                Relation::DominatedBy => {
                    dominates[j].push(i);
                    dominated_by_count[i] += 1;
                }
                Relation::Equal | Relation::Incomparable => {}
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    FrontPartition { fronts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::strictly_dominates;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p = fast_non_dominated_sort(&[[3i64, 7]]).unwrap();
        assert_eq!(p.fronts(), &[alloc::vec![0]]);

        let p = fast_non_dominated_sort(&[[4i64, 14], [9, 9]]).unwrap();
        assert_eq!(p.fronts(), &[alloc::vec![0, 1]]);

        let p = fast_non_dominated_sort(&[[4i64, 14], [3, 7], [9, 9]]).unwrap();
        assert_eq!(p.fronts(), &[alloc::vec![0, 2], alloc::vec![1]]);
        assert_eq!(p.last(), &[1]);
        assert_eq!(p.ranks(), alloc::vec![0, 1, 0]);
    }

    #[test]
    fn errors() {
        let empty: [[i64; 2]; 0] = [];
        assert_eq!(fast_non_dominated_sort(&empty), Err(Error::EmptyInput));
        let mixed: [&[i64]; 2] = [&[1, 2], &[1, 2, 3]];
        assert!(matches!(
            fast_non_dominated_sort(&mixed),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    fn points() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop_oneof![Just(2usize), Just(4usize)].prop_flat_map(|m| {
            proptest::collection::vec(proptest::collection::vec(0i64..6, m), 1..40)
        })
    }

    proptest! {
        #[test]
        fn partition_invariants(pts in points()) {
            let p = fast_non_dominated_sort(&pts).unwrap();
            let mut seen = alloc::vec![false; pts.len()];
            for front in p.fronts() {
                for &i in front {
                    prop_assert!(!seen[i]);
                    seen[i] = true;
                }
                for &i in front {
                    for &j in front {
                        prop_assert!(!strictly_dominates(&pts[i], &pts[j]).unwrap());
                    }
                }
                prop_assert!(front.windows(2).all(|w| w[0] < w[1]));
            }
            prop_assert!(seen.iter().all(|&s| s));
            for w in p.fronts().windows(2) {
                for &j in &w[1] {
                    prop_assert!(w[0].iter().any(|&i| strictly_dominates(&pts[i], &pts[j]).unwrap()));
                }
            }
            let ranks = p.ranks();
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    if pts[i] == pts[j] {
                        prop_assert_eq!(ranks[i], ranks[j]);
                    }
                }
            }
        }
    }
}
