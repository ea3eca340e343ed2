use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::instance::{IntBox, Instance};
use super::simplex::nonneg_solution;
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::linalg::{rat_vec, RatMatrix};

/// Whether `p` is a convex combination of `points`.
pub fn in_convex_hull(p: &[BigRational], points: &[Vec<BigRational>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = p.len();
    let m = RatMatrix::from_fn(n + 1, points.len(), |i, j| {
        if i < n {
            points[j][i].clone()
        } else {
            BigRational::one()
        }
    });
    let mut rhs = p.to_vec();
    rhs.push(BigRational::one());
    nonneg_solution(&m, &rhs).is_some()
}

/// Whether `points[i]` is a vertex of the convex hull of `points`. Points
/// are assumed distinct.
pub fn is_extreme(points: &[Vec<BigRational>], i: usize) -> bool {
    let others: Vec<Vec<BigRational>> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| p.clone())
        .collect();
    !in_convex_hull(&points[i], &others)
}

/// Indices of the points that are vertices of their convex hull, in order.
pub fn extreme_points(points: &[Vec<BigRational>]) -> Vec<usize> {
    (0..points.len())
        .into_par_iter()
        .filter(|&i| is_extreme(points, i))
        .collect()
}

/// Integer points of `P(A, b)` and the vertices of their convex hull, both
/// sorted lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerHull {
    pub points: Vec<Vec<BigInt>>,
    pub vertices: Vec<Vec<BigInt>>,
}

impl IntegerHull {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(crate) fn box_points(bx: &IntBox, caps: &OracleCaps, keep: impl Fn(&[BigInt]) -> bool + Sync) -> Result<Vec<Vec<BigInt>>> {
    let vol = bx.volume();
    if vol > caps.lattice {
        return Err(Error::cap("lattice points in the box", vol, caps.lattice));
    }
    let widths: Vec<u64> = bx
        .lower
        .iter()
        .zip(&bx.upper)
        .map(|(lo, hi)| u64::try_from(hi - lo + 1).expect("width within the cap"))
        .collect();
    let n = widths.len();
    Ok((0..vol as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut x = vec![BigInt::default(); n];
            for i in (0..n).rev() {
                x[i] = &bx.lower[i] + BigInt::from(idx % widths[i]);
                idx /= widths[i];
            }
            keep(&x).then_some(x)
        })
        .collect())
}

/// Integer points of the polyhedron, lexicographically sorted. Empty when
/// the polyhedron is.
pub fn lattice_points(inst: &Instance) -> Result<Vec<Vec<BigInt>>> {
    lattice_points_with_caps(inst, &OracleCaps::default())
}

pub fn lattice_points_with_caps(inst: &Instance, caps: &OracleCaps) -> Result<Vec<Vec<BigInt>>> {
    match inst.enumeration_box(caps)? {
        None => Ok(Vec::new()),
        Some((bx, _)) => box_points(&bx, caps, |x| inst.contains_int(x)),
    }
}

/// Integer points of `P(A, b)` together with the vertices of the integer
/// hull.
///
/// ```
/// use integrality::oracle::{integer_hull_points, Instance};
///
/// let inst = Instance::from_i64(&[[2], [-2]], &[1, 1]).unwrap();
/// let hull = integer_hull_points(&inst).unwrap();
/// assert_eq!(hull.points.len(), 1);
/// assert_eq!(hull.vertices, hull.points);
/// ```
pub fn integer_hull_points(inst: &Instance) -> Result<IntegerHull> {
    integer_hull_points_with_caps(inst, &OracleCaps::default())
}

pub fn integer_hull_points_with_caps(inst: &Instance, caps: &OracleCaps) -> Result<IntegerHull> {
    let points = lattice_points_with_caps(inst, caps)?;
    // a point midway between two lattice neighbours of the set is not a vertex
    let set: HashSet<&[BigInt]> = points.iter().map(|p| p.as_slice()).collect();
    let shell: Vec<&Vec<BigInt>> = points
        .iter()
        .filter(|p| {
            !(0..p.len()).any(|i| {
                let mut q = p.to_vec();
                q[i] += 1;
                let up = set.contains(q.as_slice());
                q[i] -= 2;
                up && set.contains(q.as_slice())
            })
        })
        .collect();
    let rat: Vec<Vec<BigRational>> = shell.iter().map(|p| rat_vec(p)).collect();
    let vertices = extreme_points(&rat).into_iter().map(|i| shell[i].clone()).collect();
    Ok(IntegerHull { points, vertices })
}
