//! Candidate vertices of the mixed-integer hull `conv{x in P : W x integral}`.
//!
//! For a bounded `P` the hull is the convex hull of the vertices of the
//! fibers `P ∩ {W x = y}` over integral `y`. A fiber vertex `z` solves
//! `(A_J; W_B) z = (b_J; y_B)` for a row basis `W_B` of `W` and a set `J` of
//! `n - rank W` rows of `A`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::hull::{extreme_points, is_extreme};
use super::instance::Instance;
use super::vertices::{basis_inverse, mat_vec, Vertex, VertexSet};
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::linalg::{binomial, int_rank, rat_vec, row_combination, IntMatrix, RatMatrix};

struct FiberPlan {
    /// Rows of `W` that parametrise the fibers.
    basis: Vec<usize>,
    lower: Vec<BigInt>,
    widths: Vec<u64>,
    count: u128,
}

fn lin(row: &[BigInt], x: &[BigRational]) -> BigRational {
    row.iter()
        .zip(x)
        .fold(BigRational::zero(), |acc, (a, v)| acc + BigRational::from_integer(a.clone()) * v)
}

/// Among the row bases of `W`, the one with the fewest integral values over
/// the vertices of `P`.
fn plan_fibers(w: &IntMatrix, vertices: &[Vec<BigRational>]) -> FiberPlan {
    let rho = int_rank(w);
    let mut best: Option<FiberPlan> = None;
    for basis in (0..w.rows()).combinations(rho) {
        if int_rank(&w.select_rows(&basis)) < rho {
            continue;
        }
        let mut lower = Vec::with_capacity(rho);
        let mut widths = Vec::with_capacity(rho);
        let mut count: u128 = 1;
        for &l in &basis {
            let vals: Vec<BigRational> = vertices.iter().map(|x| lin(w.row(l), x)).collect();
            let lo = vals.iter().min().expect("nonempty").ceil().to_integer();
            let hi = vals.iter().max().expect("nonempty").floor().to_integer();
            let width: BigInt = std::cmp::max(&hi - &lo + 1u32, BigInt::zero());
            let wd = u64::try_from(&width).unwrap_or(u64::MAX);
            count = count.saturating_mul(wd as u128);
            lower.push(lo);
            widths.push(wd);
        }
        if best.as_ref().is_none_or(|b: &FiberPlan| count < b.count) {
            best = Some(FiberPlan {
                basis,
                lower,
                widths,
                count,
            });
        }
    }
    best.expect("a row basis exists")
}

/// Every vertex of every nonempty fiber, deduplicated and sorted. The
/// vertices of the mixed-integer hull are exactly the extreme points of this
/// set.
pub fn wmip_candidates(inst: &Instance, w: &IntMatrix, caps: &OracleCaps) -> Result<VertexSet> {
    let n = inst.n();
    if w.cols() != n {
        return Err(Error::Dimension(format!(
            "W has {} columns for {n} variables",
            w.cols()
        )));
    }
    let Some((_, pverts)) = inst.enumeration_box(caps)? else {
        return Ok(VertexSet {
            vertices: Vec::new(),
            infeasible: true,
        });
    };
    if w.rows() == 0 {
        return Ok(pverts);
    }
    let plan = plan_fibers(w, &pverts.points());
    if plan.count > caps.fibers {
        return Err(Error::cap("fibers", plan.count, caps.fibers));
    }
    let rho = plan.basis.len();
    let wb = w.select_rows(&plan.basis);
    let wb_rat = wb.to_rat();
    // other rows of W as combinations of the basis rows
    let mu: Vec<Vec<BigRational>> = (0..w.rows())
        .filter(|i| !plan.basis.contains(i))
        .map(|i| row_combination(&wb_rat, &rat_vec(w.row(i))).expect("row in the span of the basis"))
        .collect();

    let bases = binomial(inst.m(), n - rho);
    if bases > caps.bases {
        return Err(Error::cap("fiber bases", bases, caps.bases));
    }
    let systems: Vec<(Vec<usize>, RatMatrix)> = (0..inst.m())
        .combinations(n - rho)
        .filter_map(|rows| {
            let m = inst.a().select_rows(&rows).vstack(&wb).expect("same width");
            basis_inverse(&m).map(|inv| (rows, inv))
        })
        .collect();

    let found: Vec<Vec<Vertex>> = (0..plan.count as u64)
        .into_par_iter()
        .map(|mut idx| {
            let mut yb = vec![BigInt::zero(); rho];
            for i in (0..rho).rev() {
                yb[i] = &plan.lower[i] + BigInt::from(idx % plan.widths[i]);
                idx /= plan.widths[i];
            }
            let yb_rat = rat_vec(&yb);
            if !mu.iter().all(|c| {
                c.iter()
                    .zip(&yb_rat)
                    .fold(BigRational::zero(), |acc, (a, v)| acc + a * v)
                    .is_integer()
            }) {
                return Vec::new();
            }
            let mut out = Vec::new();
            for (rows, inv) in &systems {
                let mut rhs = rat_vec(&rows.iter().map(|&i| inst.b()[i].clone()).collect::<Vec<_>>());
                rhs.extend(yb_rat.iter().cloned());
                let z = mat_vec(inv, &rhs);
                if inst.contains(&z) {
                    let y = (0..w.rows()).map(|i| lin(w.row(i), &z).to_integer()).collect();
                    out.push(Vertex {
                        point: z,
                        basis: rows.clone(),
                        fiber: Some(y),
                    });
                }
            }
            out
        })
        .collect();
    Ok(VertexSet::from_candidates(found.into_iter().flatten(), false))
}

/// Vertices of the mixed-integer hull of a bounded instance.
///
/// ```
/// use integrality::linalg::IntMatrix;
/// use integrality::oracle::{wmip_vertices, Instance};
///
/// // -1/2 <= x1 <= 1/2, 0 <= x2 <= 1
/// let inst = Instance::from_i64(&[[2, 0], [-2, 0], [0, 1], [0, -1]], &[1, 1, 1, 0]).unwrap();
/// let w = IntMatrix::from_i64(&[[1, 0]]).unwrap();
/// let vs = wmip_vertices(&inst, &w).unwrap();
/// assert_eq!(vs.len(), 2);
/// assert!(vs.all_integral());
/// ```
pub fn wmip_vertices(inst: &Instance, w: &IntMatrix) -> Result<VertexSet> {
    wmip_vertices_with_caps(inst, w, &OracleCaps::default())
}

pub fn wmip_vertices_with_caps(inst: &Instance, w: &IntMatrix, caps: &OracleCaps) -> Result<VertexSet> {
    let cand = wmip_candidates(inst, w, caps)?;
    let points = cand.points();
    let keep = extreme_points(&points);
    Ok(VertexSet {
        vertices: keep.into_iter().map(|i| cand.vertices[i].clone()).collect(),
        infeasible: cand.infeasible,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityCheck {
    pub integral: bool,
    pub candidates: usize,
    /// A fractional vertex of the mixed-integer hull, when there is one.
    pub fractional_vertex: Option<Vertex>,
}

/// Decides whether every vertex of the mixed-integer hull is integral. Only
/// fractional candidates are tested for extremality.
pub fn check_integrality(inst: &Instance, w: &IntMatrix, caps: &OracleCaps) -> Result<IntegralityCheck> {
    let cand = wmip_candidates(inst, w, caps)?;
    let points = cand.points();
    let fractional: Vec<usize> = (0..points.len()).filter(|&i| !cand.vertices[i].is_integral()).collect();
    let witness = fractional
        .into_par_iter()
        .find_map_first(|i| is_extreme(&points, i).then(|| cand.vertices[i].clone()));
    Ok(IntegralityCheck {
        integral: witness.is_none(),
        candidates: points.len(),
        fractional_vertex: witness,
    })
}

/// ```
/// use integrality::linalg::IntMatrix;
/// use integrality::oracle::{verify_integrality, Instance};
///
/// let inst = Instance::from_i64(&[[2], [-2]], &[1, 1]).unwrap();
/// assert!(!verify_integrality(&inst, &IntMatrix::zeros(0, 1)).unwrap());
/// assert!(verify_integrality(&inst, &IntMatrix::identity(1)).unwrap());
/// ```
pub fn verify_integrality(inst: &Instance, w: &IntMatrix) -> Result<bool> {
    Ok(check_integrality(inst, w, &OracleCaps::default())?.integral)
}
