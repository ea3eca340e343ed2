mod common;

use integrality::covering::{choose_k, cover_box, cover_product, cover_trivial, verify_cover, PointSet};
use integrality::linalg::{
    check_hnf, decompose, delta, det, distinct_columns, hnf, in_unit_cube, int_rank, inverse, parallelepiped_points,
    rat_vec, DeltaMode, IntMatrix,
};
use integrality::oracle::{in_convex_hull, integer_hull_points, polyhedron_vertices, verify_integrality, wmip_candidates, wmip_vertices, Instance, OracleCaps};
use integrality::wsynth::{build_w, group_reduce, is_tu, synthesize, SynthMode, TuMethod};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn matrix(m: usize, n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, m * n)
        .prop_map(move |v| IntMatrix::from_fn(m, n, |i, j| BigInt::from(v[i * n + j])))
}

fn full_rank(n: usize, extra: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=extra)
        .prop_flat_map(move |e| matrix(n + e, n, bound))
        .prop_filter("full column rank", move |a| int_rank(a) == n)
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    any::<u64>().prop_map(move |seed| common::random_unimodular(&mut common::rng(seed), n, 8))
}

fn bounded_instance(a: &IntMatrix, b: &[BigInt]) -> Option<Instance> {
    let inst = Instance::new(a.clone(), b.to_vec()).ok()?;
    inst.is_bounded().then_some(inst)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_is_multiplicative(a in matrix(3, 3, 4), b in matrix(3, 3, 4)) {
        prop_assert_eq!(det(&(&a * &b)).unwrap(), det(&a).unwrap() * det(&b).unwrap());
    }

    #[test]
    fn det_agrees_with_the_inverse(a in matrix(3, 3, 5)) {
        let d = det(&a).unwrap();
        if !d.is_zero() {
            let inv = inverse(&a.to_rat()).unwrap();
            prop_assert_eq!(&a.to_rat() * &inv, integrality::linalg::RatMatrix::identity(3));
        }
    }

    #[test]
    fn hnf_invariants(a in full_rank(3, 3, 4)) {
        let f = hnf(&a).unwrap();
        prop_assert!(check_hnf(&a, &f).is_ok());
        prop_assert_eq!(det(&f.u).unwrap().abs(), BigInt::from(1));
        prop_assert_eq!(det(&f.top()).unwrap().abs(), f.delta.clone());
    }

    #[test]
    fn parallelepiped_has_det_points(b in matrix(2, 2, 5)) {
        let d = det(&b).unwrap().abs();
        if !d.is_zero() {
            let pts = parallelepiped_points(&b).unwrap();
            prop_assert_eq!(BigInt::from(pts.len()), d);
        }
    }

    #[test]
    fn lattice_decomposition(b in matrix(3, 3, 4), v in prop::collection::vec(-30i64..=30, 3)) {
        if !det(&b).unwrap().is_zero() {
            let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            let (lambda, tau) = decompose(&b, &v).unwrap();
            prop_assert!(in_unit_cube(&lambda));
            let coeff: Vec<BigRational> = lambda.iter().zip(rat_vec(&tau)).map(|(l, t)| l + t).collect();
            let back: Vec<BigRational> = (0..3)
                .map(|i| (0..3).map(|j| BigRational::from_integer(b[(i, j)].clone()) * &coeff[j]).sum())
                .collect();
            prop_assert_eq!(back, rat_vec(&v));
        }
    }

    #[test]
    fn delta_is_unimodular_invariant(a in full_rank(2, 3, 3), u in unimodular(2)) {
        let au = &a * &u;
        prop_assert_eq!(delta(&a, DeltaMode::FullRank).unwrap(), delta(&au, DeltaMode::FullRank).unwrap());
    }

    #[test]
    fn box_cover_is_feasible(alphas in prop::collection::vec(2u64..=7, 1..=3), seed in any::<u64>()) {
        let l = alphas.len();
        let mut r = common::rng(seed);
        let lambda = IntMatrix::from_fn(l, l, |i, j| {
            use rand::Rng;
            match j.cmp(&i) {
                std::cmp::Ordering::Equal => BigInt::from(alphas[i]),
                std::cmp::Ordering::Less => BigInt::from(r.random_range(0..alphas[i] as i64)),
                std::cmp::Ordering::Greater => BigInt::zero(),
            }
        });
        let kc = choose_k(&alphas).unwrap();
        let cover = cover_box(&lambda, &kc).unwrap();
        prop_assert_eq!(cover.cost() as u128, kc.cover_cost());
        let cols = PointSet::from_int_columns(&lambda);
        prop_assert!(verify_cover(&cols, &cover));
        let mut target = integrality::covering::psi(&kc.alphas_in_input_order());
        for p in cols.iter() {
            target.insert(p.clone()).unwrap();
        }
        prop_assert!(verify_cover(&target, &cover));
    }

    #[test]
    fn product_cover_cost(a in matrix(2, 4, 3), b in matrix(1, 4, 3)) {
        let c1 = cover_trivial(&PointSet::from_int_columns(&a)).unwrap();
        let c2 = cover_trivial(&PointSet::from_int_columns(&b)).unwrap();
        let p = cover_product(&c1, &c2);
        prop_assert_eq!(p.cost(), c1.cost() * c2.cost());
        let stacked = a.vstack(&b).unwrap();
        prop_assert!(verify_cover(&PointSet::from_int_columns(&stacked), &p));
    }

    #[test]
    fn build_w_is_tu(a in matrix(3, 5, 2)) {
        let c = a.to_rat();
        let cover = cover_trivial(&PointSet::from_columns(&c)).unwrap();
        let f = build_w(&c, &cover).unwrap();
        let ex = is_tu(&f.w, TuMethod::Exhaustive).unwrap();
        let gh = is_tu(&f.w, TuMethod::GhouilaHouri).unwrap();
        prop_assert!(ex.is_tu);
        prop_assert_eq!(ex.is_tu, gh.is_tu);
    }

    #[test]
    fn tu_methods_agree_on_small_sign_matrices(w in matrix(4, 4, 1)) {
        let ex = is_tu(&w, TuMethod::Exhaustive).unwrap();
        let gh = is_tu(&w, TuMethod::GhouilaHouri).unwrap();
        prop_assert_eq!(ex.is_tu, gh.is_tu);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthesis_is_certified_and_bounded(a in full_rank(3, 3, 3)) {
        let f = hnf(&a).unwrap();
        prop_assume!(f.delta <= BigInt::from(50));
        let s = synthesize(&a, SynthMode::Best).unwrap();
        prop_assert!(s.report.holds());
        prop_assert!(is_tu(&s.w_hnf, TuMethod::Auto).unwrap().is_tu);
        prop_assert!(s.certificate.check_witnesses(&s.hnf.h));
    }

    #[test]
    fn integrality_is_unimodular_invariant(
        a in full_rank(2, 3, 3),
        u in unimodular(2),
        b in prop::collection::vec(-5i64..=5, 5),
        w in matrix(1, 2, 2),
    ) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        if let Some(inst) = bounded_instance(&a, &b) {
            let moved = Instance::new(&a * &u, b.clone()).unwrap();
            prop_assert_eq!(
                verify_integrality(&inst, &w).unwrap(),
                verify_integrality(&moved, &(&w * &u)).unwrap()
            );
        }
    }

    #[test]
    fn synthesized_w_passes_the_oracle(a in full_rank(2, 3, 3), b in prop::collection::vec(-6i64..=6, 5)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        if let Some(inst) = bounded_instance(&a, &b) {
            let s = synthesize(&a, SynthMode::Best).unwrap();
            prop_assert!(verify_integrality(&inst, &s.w).unwrap());
        }
    }

    #[test]
    fn group_reduction_invariants(a in full_rank(3, 2, 3)) {
        let f = hnf(&a).unwrap();
        prop_assume!(f.delta <= BigInt::from(20) && f.h.rows() > f.n());
        let a1 = f.top();
        let y = &f.remainder().to_rat() * &inverse(&a1.to_rat()).unwrap();
        let basis = integrality::linalg::row_basis(&y);
        let y = y.select_rows(&basis);
        let g = group_reduce(&a1, &y).unwrap();
        prop_assert!(det(&g.e).unwrap().abs() <= f.delta);
        prop_assert_eq!(distinct_columns(&g.ey).0, distinct_columns(&y).0);
    }

    #[test]
    fn oracle_sandwich(a in full_rank(2, 3, 3), b in prop::collection::vec(-5i64..=5, 5), w in matrix(1, 2, 2)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        if let Some(inst) = bounded_instance(&a, &b) {
            let hull = integer_hull_points(&inst).unwrap();
            let cand = wmip_candidates(&inst, &w, &OracleCaps::default()).unwrap();
            let cand_pts = cand.points();
            for v in &hull.vertices {
                prop_assert!(in_convex_hull(&rat_vec(v), &cand_pts));
            }
            for p in &cand_pts {
                prop_assert!(inst.contains(p));
            }
            let pv = polyhedron_vertices(&inst).unwrap();
            prop_assert_eq!(pv.infeasible, cand.infeasible);
        }
    }

    #[test]
    fn identity_w_gives_the_integer_hull(a in full_rank(2, 3, 3), b in prop::collection::vec(-5i64..=5, 5)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        if let Some(inst) = bounded_instance(&a, &b) {
            let hull = integer_hull_points(&inst).unwrap();
            let vs = wmip_vertices(&inst, &IntMatrix::identity(2)).unwrap();
            let pts: Vec<Vec<BigInt>> = vs.vertices.iter().map(|v| v.to_int().unwrap()).collect();
            prop_assert_eq!(pts, hull.vertices);
            prop_assert!(verify_integrality(&inst, &IntMatrix::identity(2)).unwrap());
        }
    }

    #[test]
    fn duplicate_rows_keep_integrality(a in full_rank(2, 3, 3), b in prop::collection::vec(-5i64..=5, 5), w in matrix(1, 2, 2)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        if let Some(inst) = bounded_instance(&a, &b) {
            if verify_integrality(&inst, &w).unwrap() {
                let ww = w.vstack(&w).unwrap();
                prop_assert!(verify_integrality(&inst, &ww).unwrap());
            }
        }
    }

    #[test]
    fn integral_fiber_vertices_are_lattice_points(a in full_rank(2, 3, 3), b in prop::collection::vec(-5i64..=5, 5)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        if let Some(inst) = bounded_instance(&a, &b) {
            let hull = integer_hull_points(&inst).unwrap();
            let w = IntMatrix::from_i64(&[[1, 1]]).unwrap();
            for v in wmip_vertices(&inst, &w).unwrap().vertices {
                if let Some(p) = v.to_int() {
                    prop_assert!(hull.points.contains(&p));
                }
            }
        }
    }
}

#[test]
fn alphas_fit_u64() {
    let f = hnf(&IntMatrix::from_i64(&[[2, 0], [0, 3], [1, 1]]).unwrap()).unwrap();
    assert!(f.alphas.iter().all(|a| a.to_u64().is_some()));
}
