//! The oracles on hand-checked inputs and their capacity limits.

use agemoa_core::{ProblemSpec, ReferencePoint};
use agemoa_testkit::*;
use rand::SeedableRng;

#[test]
fn grid_hypervolume_by_hand() {
    let r = ReferencePoint::uniform(2, -1);
    assert_eq!(grid_hypervolume_oracle(&[[1i64, 1]], &r).unwrap(), 4);
    // Two overlapping boxes: 3x2 + 2x3 - 2x2.
    assert_eq!(
        grid_hypervolume_oracle(&[[2i64, 1], [1, 2]], &r).unwrap(),
        8
    );
    let r3 = ReferencePoint::uniform(3, 0);
    assert_eq!(grid_hypervolume_oracle(&[[2i64, 3, 4]], &r3).unwrap(), 24);
}

#[test]
fn grid_limit_is_enforced() {
    let r = ReferencePoint::uniform(4, -1);
    let huge = [[100i64, 100, 100, 100]];
    assert!(matches!(
        grid_hypervolume_oracle(&huge, &r),
        Err(OracleError::Capacity(_))
    ));
}

#[test]
fn peeling_by_hand() {
    let points = [[1i64, 1], [2, 2], [3, 0], [2, 2], [0, 0]];
    let p = naive_front_peeling(&points).unwrap();
    let fronts: Vec<Vec<usize>> = p
        .fronts()
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort();
            f
        })
        .collect();
    assert_eq!(fronts, vec![vec![1, 2, 3], vec![0], vec![4]]);
    assert!(matches!(
        naive_front_peeling::<[i64; 2]>(&[]),
        Err(OracleError::EmptyInput)
    ));
}

#[test]
fn enumeration_limit_is_enforced() {
    let spec = ProblemSpec::ojzj(MAX_ENUMERATION_BITS + 1, 2).unwrap();
    assert!(matches!(
        brute_force_pareto_front(&spec),
        Err(OracleError::Capacity(_))
    ));
}

#[test]
fn random_points_stay_in_range() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let pts = random_points(&mut rng, 50, 3, -2, 4);
    assert_eq!(pts.len(), 50);
    assert!(pts.iter().flatten().all(|&c| (-2..=4).contains(&c)));
}
