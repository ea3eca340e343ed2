use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::instance::Instance;
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::linalg::{binomial, det, inverse, rat_vec, IntMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub point: Vec<BigRational>,
    /// Rows of `A` that are tight at the point and, together with the fiber
    /// rows of `W` when present, linearly independent.
    pub basis: Vec<usize>,
    /// `W x` for fiber vertices.
    pub fiber: Option<Vec<BigInt>>,
}

impl Vertex {
    pub fn is_integral(&self) -> bool {
        self.point.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.point.iter().map(|x| x.to_integer()).collect())
    }
}

/// Vertices sorted lexicographically by point, without duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<Vertex>,
    /// Set when the polyhedron itself is empty.
    pub infeasible: bool,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn points(&self) -> Vec<Vec<BigRational>> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }

    pub fn all_integral(&self) -> bool {
        self.vertices.iter().all(Vertex::is_integral)
    }

    /// Drops repeated points, keeping the first witness, and sorts.
    pub(crate) fn from_candidates(candidates: impl IntoIterator<Item = Vertex>, infeasible: bool) -> Self {
        let mut seen: HashMap<Vec<BigRational>, ()> = HashMap::new();
        let mut vertices: Vec<Vertex> = candidates
            .into_iter()
            .filter(|v| seen.insert(v.point.clone(), ()).is_none())
            .collect();
        vertices.sort_by(|x, y| x.point.cmp(&y.point));
        VertexSet { vertices, infeasible }
    }
}

pub(crate) fn mat_vec(m: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (x, y)| if x.is_zero() { acc } else { acc + x * y })
        })
        .collect()
}

/// Inverse of a square integer matrix, or `None` when it is singular.
pub(crate) fn basis_inverse(m: &IntMatrix) -> Option<RatMatrix> {
    if det(m).ok()?.is_zero() {
        return None;
    }
    inverse(&m.to_rat()).ok()
}

/// All vertices of `P(A, b)`, each with its lexicographically smallest
/// feasible basis.
///
/// ```
/// use integrality::oracle::{polyhedron_vertices, Instance};
///
/// let square = Instance::from_i64(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[1, 1, 0, 0]).unwrap();
/// assert_eq!(polyhedron_vertices(&square).unwrap().len(), 4);
///
/// let empty = Instance::from_i64(&[[1], [-1]], &[0, -1]).unwrap();
/// assert!(polyhedron_vertices(&empty).unwrap().infeasible);
/// ```
pub fn polyhedron_vertices(inst: &Instance) -> Result<VertexSet> {
    polyhedron_vertices_with_caps(inst, &OracleCaps::default())
}

pub fn polyhedron_vertices_with_caps(inst: &Instance, caps: &OracleCaps) -> Result<VertexSet> {
    let (m, n) = (inst.m(), inst.n());
    let count = binomial(m, n);
    if count > caps.bases {
        return Err(Error::cap("bases", count, caps.bases));
    }
    let combos: Vec<Vec<usize>> = (0..m).combinations(n).collect();
    let found: Vec<Option<Vertex>> = combos
        .into_par_iter()
        .map(|rows| {
            let inv = basis_inverse(&inst.a().select_rows(&rows))?;
            let rhs = rat_vec(&rows.iter().map(|&i| inst.b()[i].clone()).collect::<Vec<_>>());
            let x = mat_vec(&inv, &rhs);
            inst.contains(&x).then_some(Vertex {
                point: x,
                basis: rows,
                fiber: None,
            })
        })
        .collect();
    let set = VertexSet::from_candidates(found.into_iter().flatten(), false);
    let infeasible = set.is_empty();
    Ok(VertexSet { infeasible, ..set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn unit_square() {
        let inst = Instance::from_i64(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[1, 1, 0, 0]).unwrap();
        let vs = polyhedron_vertices(&inst).unwrap();
        assert!(!vs.infeasible);
        assert_eq!(vs.len(), 4);
        assert!(vs.all_integral());
        assert_eq!(vs.vertices[0].point, rat_vec(&int_vec(&[0, 0])));
        assert_eq!(vs.vertices[0].basis, vec![2, 3]);
    }

    #[test]
    fn infeasible_interval() {
        let inst = Instance::from_i64(&[[1], [-1]], &[0, -1]).unwrap();
        let vs = polyhedron_vertices(&inst).unwrap();
        assert!(vs.infeasible);
        assert!(vs.is_empty());
    }

    #[test]
    fn degenerate_apex_is_reported_once() {
        // four facets through the apex of a pyramid
        let inst = Instance::from_i64(
            &[[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1], [0, 0, -1]],
            &[2, 2, 2, 2, 0],
        )
        .unwrap();
        let vs = polyhedron_vertices(&inst).unwrap();
        assert_eq!(vs.len(), 5);
        let apex = vs.vertices.iter().find(|v| v.point[2] == q("2")).unwrap();
        assert_eq!(apex.basis, vec![0, 1, 2]);
    }

    #[test]
    fn fractional_vertices() {
        let inst = Instance::from_i64(&[[2], [-2]], &[1, 1]).unwrap();
        let vs = polyhedron_vertices(&inst).unwrap();
        assert_eq!(vs.points(), vec![vec![q("-1/2")], vec![q("1/2")]]);
        assert!(!vs.all_integral());
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::from_i64(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[1, 1, 0, 0]).unwrap();
        let caps = OracleCaps {
            bases: 5,
            ..OracleCaps::default()
        };
        assert!(matches!(
            polyhedron_vertices_with_caps(&inst, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }
}
