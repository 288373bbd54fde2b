//! Brute-force oracles for `agemoa-core`.
//!
//! Everything here is deliberately naive and written straight from the
//! definitions, sharing no code paths with the library it checks beyond the
//! public data types.

use std::collections::BTreeSet;

use agemoa_core::{FrontPartition, ObjectiveVector, ProblemKind, ProblemSpec, ReferencePoint};
use rand::Rng;

/// Largest `n` for exhaustive genotype enumeration.
pub const MAX_ENUMERATION_BITS: usize = 20;
/// Largest grid the cell-counting hypervolume oracle will walk.
pub const MAX_GRID_CELLS: u128 = 10_000_000;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("oracle capacity exceeded: {0}")]
    Capacity(String),
    #[error("oracle input must not be empty")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Objective values of a genotype given as plain booleans, evaluated bit by
/// bit from the benchmark definition.
pub fn reference_objectives(bits: &[bool], spec: &ProblemSpec) -> Vec<i64> {
    assert_eq!(bits.len(), spec.n());
    let block_len = match spec.kind() {
        ProblemKind::Ojzj => spec.n(),
        ProblemKind::Mojzj => 2 * spec.n() / spec.m(),
    };
    let k = spec.k() as i64;
    let len = block_len as i64;
    let mut out = Vec::with_capacity(spec.m());
    for block in bits.chunks(block_len) {
        let ones = block.iter().filter(|&&b| b).count() as i64;
        let zeros = len - ones;
        let all_ones = block.iter().all(|&b| b);
        let all_zeros = block.iter().all(|&b| !b);
        let f1 = if ones <= len - k || all_ones {
            k + ones
        } else {
            len - ones
        };
        let f2 = if zeros <= len - k || all_zeros {
            k + zeros
        } else {
            len - zeros
        };
        out.push(f1);
        out.push(f2);
    }
    out
}

fn strictly_better(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a >= b) && u != v
}

/// Evaluates all `2^n` genotypes and keeps the distinct vectors no other
/// vector strictly dominates.
pub fn brute_force_pareto_front(
    spec: &ProblemSpec,
) -> Result<BTreeSet<ObjectiveVector>, OracleError> {
    let n = spec.n();
    if n > MAX_ENUMERATION_BITS {
        return Err(OracleError::Capacity(format!(
            "enumerating 2^{n} genotypes (limit 2^{MAX_ENUMERATION_BITS})"
        )));
    }
    let mut values: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut bits = vec![false; n];
    for code in 0u64..(1u64 << n) {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = code >> i & 1 == 1;
        }
        values.insert(reference_objectives(&bits, spec));
    }
    let values: Vec<Vec<i64>> = values.into_iter().collect();
    Ok(values
        .iter()
        .filter(|v| !values.iter().any(|u| strictly_better(u, v)))
        .map(|v| ObjectiveVector::new(v.clone()))
        .collect())
}

/// A front vector and a genotype attaining it, if any.
pub type Witness = (ObjectiveVector, Option<Vec<bool>>);

/// Genotypes (as booleans) attaining each vector of `front`, found by
/// enumeration. Vectors with no witness map to `None`.
pub fn front_witnesses(
    spec: &ProblemSpec,
    front: &BTreeSet<ObjectiveVector>,
) -> Result<Vec<Witness>, OracleError> {
    let n = spec.n();
    if n > MAX_ENUMERATION_BITS {
        return Err(OracleError::Capacity(format!(
            "enumerating 2^{n} genotypes"
        )));
    }
    let mut found: Vec<(ObjectiveVector, Option<Vec<bool>>)> =
        front.iter().map(|v| (v.clone(), None)).collect();
    for code in 0u64..(1u64 << n) {
        let bits: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
        let v = reference_objectives(&bits, spec);
        if let Some(slot) = found
            .iter_mut()
            .find(|(p, w)| w.is_none() && p.as_slice() == v)
        {
            slot.1 = Some(bits);
        }
    }
    Ok(found)
}

/// Repeatedly peels off the members no remaining member strictly dominates.
pub fn naive_front_peeling<P: AsRef<[i64]>>(points: &[P]) -> Result<FrontPartition, OracleError> {
    if points.is_empty() {
        return Err(OracleError::EmptyInput);
    }
    let m = points[0].as_ref().len();
    if let Some(p) = points.iter().find(|p| p.as_ref().len() != m) {
        return Err(OracleError::DimensionMismatch {
            expected: m,
            found: p.as_ref().len(),
        });
    }
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let (front, rest): (Vec<usize>, Vec<usize>) = remaining.iter().partition(|&&i| {
            !remaining
                .iter()
                .any(|&j| strictly_better(points[j].as_ref(), points[i].as_ref()))
        });
        fronts.push(front);
        remaining = rest;
    }
    Ok(FrontPartition::from_fronts(fronts))
}

/// Hypervolume by counting unit cells: a cell is identified by its upper
/// corner `c` with `r < c`, and counted when some point satisfies `c ≤ p`.
pub fn grid_hypervolume_oracle<P: AsRef<[i64]>>(
    points: &[P],
    r: &ReferencePoint,
) -> Result<u128, OracleError> {
    let m = r.dim();
    let r = r.as_slice();
    for p in points {
        if p.as_ref().len() != m {
            return Err(OracleError::DimensionMismatch {
                expected: m,
                found: p.as_ref().len(),
            });
        }
    }
    if points.is_empty() {
        return Ok(0);
    }
    let upper: Vec<i64> = (0..m)
        .map(|j| points.iter().map(|p| p.as_ref()[j]).max().unwrap())
        .collect();
    let extents: Vec<u128> = upper
        .iter()
        .zip(r)
        .map(|(&u, &lo)| if u > lo { (u - lo) as u128 } else { 0 })
        .collect();
    let cells: u128 = extents.iter().product();
    if cells > MAX_GRID_CELLS {
        return Err(OracleError::Capacity(format!(
            "{cells} grid cells (limit {MAX_GRID_CELLS})"
        )));
    }
    if cells == 0 {
        return Ok(0);
    }
    let mut corner: Vec<i64> = r.iter().map(|&lo| lo + 1).collect();
    let mut count = 0u128;
    loop {
        if points
            .iter()
            .any(|p| p.as_ref().iter().zip(&corner).all(|(a, c)| a >= c))
        {
            count += 1;
        }
        // odometer increment over the grid
        let mut j = 0;
        loop {
            if j == m {
                return Ok(count);
            }
            if corner[j] < upper[j] {
                corner[j] += 1;
                break;
            }
            corner[j] = r[j] + 1;
            j += 1;
        }
    }
}

/// `count` integer points of dimension `m` with coordinates in `lo..=hi`.
pub fn random_points<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    m: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| (0..m).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

/// Fronts as a sorted multiset of sorted vector multisets, independent of
/// the member indices.
pub fn front_multiset<P: AsRef<[i64]>>(
    points: &[P],
    partition: &FrontPartition,
) -> Vec<Vec<Vec<i64>>> {
    partition
        .fronts()
        .iter()
        .map(|f| {
            let mut v: Vec<Vec<i64>> = f.iter().map(|&i| points[i].as_ref().to_vec()).collect();
            v.sort();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_ojzj_front() {
        let spec = ProblemSpec::ojzj(2, 1).unwrap();
        let front = brute_force_pareto_front(&spec).unwrap();
        let expected: BTreeSet<_> = [[1i64, 3], [2, 2], [3, 1]]
            .into_iter()
            .map(ObjectiveVector::from)
            .collect();
        assert_eq!(front, expected);
    }

    #[test]
    fn capacity_limits() {
        let spec = ProblemSpec::ojzj(21, 2).unwrap();
        assert!(matches!(
            brute_force_pareto_front(&spec),
            Err(OracleError::Capacity(_))
        ));
        let r = ReferencePoint::uniform(4, -1);
        assert!(matches!(
            grid_hypervolume_oracle(&[[100i64, 100, 100, 100]], &r),
            Err(OracleError::Capacity(_))
        ));
    }

    #[test]
    fn grid_oracle_examples() {
        let r = ReferencePoint::uniform(2, -1);
        assert_eq!(
            grid_hypervolume_oracle(&[[4i64, 14], [14, 4]], &r).unwrap(),
            125
        );
        let empty: [[i64; 2]; 0] = [];
        assert_eq!(grid_hypervolume_oracle(&empty, &r).unwrap(), 0);
        let r3 = ReferencePoint::uniform(3, -1);
        assert_eq!(grid_hypervolume_oracle(&[[2i64, 0, 5]], &r3).unwrap(), 18);
    }

    #[test]
    fn peeling_examples() {
        let p = naive_front_peeling(&[[3i64, 7]]).unwrap();
        assert_eq!(p.len(), 1);
        let p = naive_front_peeling(&[[4i64, 14], [3, 7]]).unwrap();
        assert_eq!(p.fronts(), &[vec![0], vec![1]]);
        let empty: [[i64; 2]; 0] = [];
        assert!(matches!(
            naive_front_peeling(&empty),
            Err(OracleError::EmptyInput)
        ));
    }

    #[test]
    fn oracle_front_is_an_antichain() {
        for n in 2..=14 {
            for k in 1..=3.min(n / 2) {
                let spec = ProblemSpec::ojzj(n, k).unwrap();
                let front: Vec<_> = brute_force_pareto_front(&spec)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(front.len(), n - 2 * k + 3);
                for u in &front {
                    for v in &front {
                        assert!(!strictly_better(u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn reference_objectives_match_library() {
        let spec = ProblemSpec::mojzj(12, 4, 2).unwrap();
        for code in (0u64..4096).step_by(7) {
            let bits: Vec<bool> = (0..12).map(|i| code >> i & 1 == 1).collect();
            let lib = spec
                .evaluate(&agemoa_core::BitString::from_bits(&bits))
                .unwrap();
            assert_eq!(
                lib.as_slice(),
                reference_objectives(&bits, &spec).as_slice()
            );
        }
    }
}
