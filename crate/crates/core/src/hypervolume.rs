//! Exact integer hypervolume for maximization problems.
//!
//! All coordinates and the reference point are integers, so every volume is an
//! exact integer and least-contributor ties need no tolerance.
//!
//! The m-dimensional routine is a WFG-style recursion: points are sorted by
//! their last objective, ascending, and each point's exclusive volume with
//! respect to the points after it is `box(p) − HV(rest clipped to p)`. Clipping
//! to `p` sets every remaining last coordinate to `p`'s, so the clipped term is
//! an `(m−1)`-dimensional volume times a slab height, bottoming out in a 2-D
//! sweep.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::objective::weakly_dominates_unchecked;

pub type Volume = u128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReferencePoint(Vec<i64>);

impl ReferencePoint {
    pub fn new(values: Vec<i64>) -> Self {
        Self(values)
    }

    pub fn uniform(m: usize, value: i64) -> Self {
        Self(alloc::vec![value; m])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl AsRef<[i64]> for ReferencePoint {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

fn validate<P: AsRef<[i64]>>(points: &[P], r: &ReferencePoint) -> Result<()> {
    for p in points {
        let p = p.as_ref();
        if p.len() != r.dim() {
            return Err(Error::DimensionMismatch {
                expected: r.dim(),
                found: p.len(),
            });
        }
        if let Some(objective) = p.iter().zip(&r.0).position(|(a, b)| a < b) {
            return Err(Error::BelowReference { objective });
        }
    }
    Ok(())
}

/// `HV_r(S)`: measure of the union of boxes `[r, p]`. Duplicates and dominated
/// points do not change the result; the empty set has volume 0.
pub fn hypervolume<P: AsRef<[i64]>>(points: &[P], r: &ReferencePoint) -> Result<Volume> {
    validate(points, r)?;
    let rows: Vec<&[i64]> = points.iter().map(AsRef::as_ref).collect();
    Ok(hv(&rows, &r.0))
}

/// `Δ_r(x_i, F) = HV_r(F) − HV_r(F \ {x_i})`, removing one copy of member `i`.
pub fn hv_contribution<P: AsRef<[i64]>>(
    index: usize,
    front: &[P],
    r: &ReferencePoint,
) -> Result<Volume> {
    if index >= front.len() {
        return Err(Error::IndexOutOfRange {
            index,
            len: front.len(),
        });
    }
    validate(front, r)?;
    let p = front[index].as_ref();
    let others: Vec<&[i64]> = front
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, q)| q.as_ref())
        .collect();
    Ok(exclusive(p, &others, &r.0))
}

/// `D = argmin_z Δ_r(z, F)` as ascending member indices.
///
/// A member contributes zero exactly when its box is degenerate or another
/// member weakly dominates it; those are found directly. Only when no member
/// contributes zero are the (then distinct, mutually non-dominating) points
/// measured.
pub fn min_contribution_set<P: AsRef<[i64]>>(
    front: &[P],
    r: &ReferencePoint,
) -> Result<Vec<usize>> {
    if front.is_empty() {
        return Err(Error::EmptyInput);
    }
    validate(front, r)?;
    let rows: Vec<&[i64]> = front.iter().map(AsRef::as_ref).collect();
    let zero: Vec<usize> = (0..rows.len())
        .filter(|&i| {
            is_degenerate(rows[i], &r.0)
                || rows
                    .iter()
                    .enumerate()
                    .any(|(j, q)| j != i && weakly_dominates_unchecked(q, rows[i]))
        })
        .collect();
    if !zero.is_empty() {
        return Ok(zero);
    }
    Ok(argmin(&antichain_contributions(&rows, &r.0)))
}

pub(crate) fn argmin(values: &[Volume]) -> Vec<usize> {
    let Some(&min) = values.iter().min() else {
        return Vec::new();
    };
    (0..values.len()).filter(|&i| values[i] == min).collect()
}

#[inline]
pub(crate) fn is_degenerate(p: &[i64], r: &[i64]) -> bool {
    p.iter().zip(r).any(|(a, b)| a <= b)
}

/// Contributions of pairwise distinct, mutually non-dominating points.
pub(crate) fn antichain_contributions(points: &[&[i64]], r: &[i64]) -> Vec<Volume> {
    if r.len() == 2 {
        return contributions_2d(points, r);
    }
    let mut others: Vec<&[i64]> = Vec::with_capacity(points.len());
    (0..points.len())
        .map(|i| {
            others.clear();
            others.extend(
                points
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, q)| *q),
            );
            exclusive(points[i], &others, r)
        })
        .collect()
}

/// Sorted by `f_1`, an antichain has `f_2` descending, and each point owns the
/// rectangle between its neighbours.
fn contributions_2d(points: &[&[i64]], r: &[i64]) -> Vec<Volume> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by_key(|&i| points[i][0]);
    let mut out = alloc::vec![0; points.len()];
    for (pos, &i) in order.iter().enumerate() {
        let left = if pos == 0 {
            r[0]
        } else {
            points[order[pos - 1]][0]
        };
        let below = if pos + 1 == order.len() {
            r[1]
        } else {
            points[order[pos + 1]][1]
        };
        out[i] = span(points[i][0], left) * span(points[i][1], below);
    }
    out
}

#[inline]
fn span(hi: i64, lo: i64) -> Volume {
    if hi > lo {
        (hi - lo) as Volume
    } else {
        0
    }
}

fn box_volume(p: &[i64], r: &[i64]) -> Volume {
    p.iter().zip(r).map(|(&a, &b)| span(a, b)).product()
}

/// Volume dominated by `p` but not by any point of `others`.
fn exclusive(p: &[i64], others: &[&[i64]], r: &[i64]) -> Volume {
    let clipped: Vec<Vec<i64>> = others
        .iter()
        .map(|q| q.iter().zip(p).map(|(&a, &b)| a.min(b)).collect())
        .collect();
    let rows: Vec<&[i64]> = clipped.iter().map(Vec::as_slice).collect();
    box_volume(p, r) - hv(&rows, r)
}

fn hv(points: &[&[i64]], r: &[i64]) -> Volume {
    let nd = nondominated(points, r);
    match r.len() {
        0 => 0,
        1 => nd.iter().map(|p| span(p[0], r[0])).max().unwrap_or(0),
        2 => sweep_2d(nd, r),
        m => {
            let last = m - 1;
            let mut nd = nd;
            nd.sort_unstable_by_key(|p| p[last]);
            let mut total = 0;
            let mut clipped: Vec<Vec<i64>> = Vec::new();
            for (i, p) in nd.iter().enumerate() {
                let head = &p[..last];
                clipped.clear();
                clipped.extend(nd[i + 1..].iter().map(|q| {
                    q[..last]
                        .iter()
                        .zip(head)
                        .map(|(&a, &b)| a.min(b))
                        .collect()
                }));
                let rows: Vec<&[i64]> = clipped.iter().map(Vec::as_slice).collect();
                let slab = box_volume(head, &r[..last]) - hv(&rows, &r[..last]);
                total += span(p[last], r[last]) * slab;
            }
            total
        }
    }
}

/// Distinct points not weakly dominated by another point and with a
/// non-degenerate box.
fn nondominated<'a>(points: &[&'a [i64]], r: &[i64]) -> Vec<&'a [i64]> {
    let mut out: Vec<&'a [i64]> = Vec::with_capacity(points.len());
    'outer: for &p in points {
        if is_degenerate(p, r) {
            continue;
        }
        let mut i = 0;
        while i < out.len() {
            if weakly_dominates_unchecked(out[i], p) {
                continue 'outer;
            }
            if weakly_dominates_unchecked(p, out[i]) {
                out.swap_remove(i);
            } else {
                i += 1;
            }
        }
        out.push(p);
    }
    out
}

/// 2-D sweep over an antichain: ascending `f_1` (so descending `f_2`), summing
/// `(f1_i − f1_{i−1}) · (f2_i − r_2)` with `f1_0 = r_1`.
fn sweep_2d(mut points: Vec<&[i64]>, r: &[i64]) -> Volume {
    points.sort_unstable_by_key(|p| p[0]);
    let mut prev = r[0];
    let mut total = 0;
    for p in points {
        total += span(p[0], prev) * span(p[1], r[1]);
        prev = p[0];
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r2() -> ReferencePoint {
        ReferencePoint::uniform(2, -1)
    }

    #[test]
    fn hypervolume_examples() {
        let empty: [[i64; 2]; 0] = [];
        assert_eq!(hypervolume(&empty, &r2()).unwrap(), 0);
        assert_eq!(hypervolume(&[[4i64, 14]], &r2()).unwrap(), 75);
        assert_eq!(hypervolume(&[[4i64, 14], [14, 4]], &r2()).unwrap(), 125);
        assert_eq!(
            hypervolume(&[[4i64, 14], [9, 9], [14, 4]], &r2()).unwrap(),
            150
        );
    }

    #[test]
    fn contribution_examples() {
        let front = [[4i64, 14], [9, 9], [14, 4]];
        assert_eq!(hv_contribution(1, &front, &r2()).unwrap(), 25);
        // every member of this front owns a 5 x 5 corner
        assert_eq!(hv_contribution(0, &front, &r2()).unwrap(), 25);
        assert_eq!(hv_contribution(2, &front, &r2()).unwrap(), 25);
        assert_eq!(hv_contribution(0, &[[9i64, 9], [9, 9]], &r2()).unwrap(), 0);
        assert_eq!(hv_contribution(1, &[[9i64, 9], [9, 9]], &r2()).unwrap(), 0);
        assert_eq!(hv_contribution(0, &[[4i64, 14]], &r2()).unwrap(), 75);
        assert_eq!(
            hv_contribution(3, &front, &r2()),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn min_contribution_examples() {
        assert_eq!(min_contribution_set(&[[4i64, 14]], &r2()).unwrap(), [0]);
        assert_eq!(
            min_contribution_set(&[[9i64, 9], [9, 9], [4, 14]], &r2()).unwrap(),
            [0, 1]
        );
        assert_eq!(
            min_contribution_set(&[[4i64, 14], [9, 9], [14, 4]], &r2()).unwrap(),
            [0, 1, 2]
        );
        assert_eq!(
            min_contribution_set(&[[4i64, 14], [10, 8], [14, 4]], &r2()).unwrap(),
            [2]
        );
        let empty: [[i64; 2]; 0] = [];
        assert_eq!(min_contribution_set(&empty, &r2()), Err(Error::EmptyInput));
    }

    #[test]
    fn below_reference_is_rejected() {
        assert_eq!(
            hypervolume(&[[3i64, -2]], &r2()),
            Err(Error::BelowReference { objective: 1 })
        );
        assert!(matches!(
            hypervolume(&[[3i64, 2, 1]], &r2()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_boxes_contribute_nothing() {
        let front = [[-1i64, 20], [5, 5]];
        assert_eq!(hypervolume(&front, &r2()).unwrap(), 36);
        assert_eq!(min_contribution_set(&front, &r2()).unwrap(), [0]);
    }

    #[test]
    fn three_and_four_dimensions_by_hand() {
        let r3 = ReferencePoint::uniform(3, 0);
        // two overlapping boxes: 2*3*4 + 4*2*1 − 2*2*1
        assert_eq!(hypervolume(&[[2i64, 3, 4], [4, 2, 1]], &r3).unwrap(), 28);
        let r4 = ReferencePoint::uniform(4, 0);
        assert_eq!(hypervolume(&[[1i64, 2, 3, 4]], &r4).unwrap(), 24);
        assert_eq!(
            hypervolume(&[[1i64, 2, 3, 4], [4, 3, 2, 1]], &r4).unwrap(),
            24 + 24 - 4 // overlap box 1x2x2x1
        );
    }

    fn point_set() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (2usize..=4).prop_flat_map(|m| {
            (
                Just(m),
                proptest::collection::vec(proptest::collection::vec(0i64..8, m), 0..12),
            )
        })
    }

    proptest! {
        #[test]
        fn monotone_and_permutation_invariant((m, pts) in point_set(), extra in proptest::collection::vec(0i64..8, 4)) {
            let r = ReferencePoint::uniform(m, -1);
            let base = hypervolume(&pts, &r).unwrap();
            let mut more = pts.clone();
            more.push(extra[..m].to_vec());
            prop_assert!(hypervolume(&more, &r).unwrap() >= base);
            let mut rev = pts.clone();
            rev.reverse();
            if let Some(p) = pts.first() {
                rev.push(p.clone());
            }
            prop_assert_eq!(hypervolume(&rev, &r).unwrap(), base);
        }

        #[test]
        fn contributions_are_consistent((m, pts) in point_set()) {
            prop_assume!(!pts.is_empty());
            let r = ReferencePoint::uniform(m, -1);
            let total = hypervolume(&pts, &r).unwrap();
            let contrib: Vec<Volume> = (0..pts.len())
                .map(|i| hv_contribution(i, &pts, &r).unwrap())
                .collect();
            let mut seen = std::collections::BTreeSet::new();
            let mut sum = 0;
            for (i, p) in pts.iter().enumerate() {
                let dominated = pts.iter().enumerate().any(|(j, q)| {
                    j != i && weakly_dominates_unchecked(q, p)
                });
                if dominated {
                    prop_assert_eq!(contrib[i], 0);
                }
                if seen.insert(p.clone()) {
                    sum += contrib[i];
                }
            }
            prop_assert!(sum <= total);
            let expected = argmin(&contrib);
            prop_assert_eq!(min_contribution_set(&pts, &r).unwrap(), expected);
        }
    }
}
