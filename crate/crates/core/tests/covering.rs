use integrality::covering::{
    ceil_sqrt, choose_k, cover_box, cover_optimal_bruteforce, cover_trivial, default_grid, int_point, verify_cover,
    BruteForceCaps, PointSet,
};
use integrality::linalg::IntMatrix;
use integrality::Error;

/// The 6 x 3 block of lattice points plus the two points sticking out of it.
fn staircase() -> PointSet {
    let mut pts: Vec<_> = (0..6).flat_map(|x| (0..3).map(move |y| int_point(&[x, y]))).collect();
    pts.push(int_point(&[6, 0]));
    pts.push(int_point(&[0, 3]));
    PointSet::from_points(2, pts).unwrap()
}

#[test]
fn trivial_cover_costs_one_per_point() {
    let c = staircase();
    assert_eq!(c.len(), 20);
    let cover = cover_trivial(&c).unwrap();
    assert_eq!(cover.cost(), 20);
    assert!(verify_cover(&c, &cover));
}

#[test]
fn box_cover_of_the_six_by_three_shape() {
    let lambda = IntMatrix::from_i64(&[[6, 0], [0, 3]]).unwrap();
    let kc = choose_k(&[6, 3]).unwrap();
    let cover = cover_box(&lambda, &kc).unwrap();
    assert!(verify_cover(&staircase(), &cover));
    assert_eq!(cover.cost() as u128, kc.cover_cost());
}

#[test]
fn default_grid_cap_refuses_the_staircase() {
    let c = staircase();
    assert_eq!(default_grid(&c).len(), 75);
    assert!(matches!(
        cover_optimal_bruteforce(&c, None, BruteForceCaps::default()),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn optimal_cover_of_the_staircase() {
    let c = staircase();
    let caps = BruteForceCaps {
        max_grid: 80,
        ..BruteForceCaps::default()
    };
    let best = cover_optimal_bruteforce(&c, None, caps).unwrap();
    assert!(verify_cover(&c, &best));
    assert!(best.cost() as u128 >= ceil_sqrt(20));
    assert!(best.cost() <= 20);
    let again = cover_optimal_bruteforce(&c, None, caps).unwrap();
    assert_eq!(best.cost(), again.cost());
    println!("optimal cost {}", best.cost());
}
