//! The column covering problem: given a finite `C` in `Q^l`, find finite sets
//! `B` and `T` (with `0` not in `T`) such that every point of `C` is some
//! `b + t` or some `b` alone. The cost of a cover is `|B| + |T|`.

mod brute;
mod construct;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

pub use brute::{cover_optimal_bruteforce, default_grid, BruteForceCaps};
pub use construct::{
    box_cover_bound, choose_k, cover_box, cover_box_raw, cover_product, cover_trivial, psi, within_box_cover_bound, KCase,
    KChoice,
};

pub type Point = Vec<BigRational>;

pub fn int_point(v: &[i64]) -> Point {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub(crate) fn add_points(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_points(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_origin(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Finite set of points of a fixed dimension, kept in insertion order with
/// duplicates dropped.
#[derive(Clone, Default)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl PointSet {
    pub fn new(dim: usize) -> Self {
        PointSet {
            dim,
            points: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_points(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut s = PointSet::new(dim);
        for p in points {
            s.insert(p)?;
        }
        Ok(s)
    }

    /// The columns of a rational matrix, as points of dimension `rows`.
    pub fn from_columns(m: &RatMatrix) -> Self {
        let mut s = PointSet::new(m.rows());
        for c in m.col_vecs() {
            s.insert(c).expect("columns share the row count");
        }
        s
    }

    pub fn from_int_columns(m: &IntMatrix) -> Self {
        Self::from_columns(&m.to_rat())
    }

    /// Inserts `p` unless already present and returns its index.
    pub fn insert(&mut self, p: Point) -> Result<usize> {
        if p.len() != self.dim {
            return Err(Error::Dimension(format!(
                "point of dimension {} in a set of dimension {}",
                p.len(),
                self.dim
            )));
        }
        if let Some(&i) = self.index.get(&p) {
            return Ok(i);
        }
        let i = self.points.len();
        self.index.insert(p.clone(), i);
        self.points.push(p);
        Ok(i)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn position(&self, p: &[BigRational]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        self.index.contains_key(p)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// The points as the columns of a `dim x len` matrix.
    pub fn to_column_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.dim, self.len(), |i, j| self.points[j][i].clone())
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

impl Eq for PointSet {}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.points.iter().map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

/// How one covered point is written: `B[b]`, plus `T[t]` when present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub b: usize,
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    b: PointSet,
    t: PointSet,
    covered: PointSet,
    assignment: Vec<Assignment>,
}

impl Cover {
    /// Builds a cover of `covered` from `B` and `T`, choosing for every point
    /// the representation with the lowest `B` index.
    pub fn from_parts(b: PointSet, t: PointSet, covered: PointSet) -> Result<Self> {
        check_dims(&b, &t, &covered)?;
        let mut assignment = Vec::with_capacity(covered.len());
        for c in covered.iter() {
            let a = b
                .iter()
                .enumerate()
                .find_map(|(i, bp)| {
                    let d = sub_points(c, bp);
                    if is_origin(&d) {
                        Some(Assignment { b: i, t: None })
                    } else {
                        t.position(&d).map(|j| Assignment { b: i, t: Some(j) })
                    }
                })
                .ok_or_else(|| Error::InvalidCover(format!("point {} is not covered", show(c))))?;
            assignment.push(a);
        }
        Ok(Cover {
            b,
            t,
            covered,
            assignment,
        })
    }

    /// Assembles a cover from a precomputed assignment, which is validated.
    pub fn with_assignment(b: PointSet, t: PointSet, covered: PointSet, assignment: Vec<Assignment>) -> Result<Self> {
        check_dims(&b, &t, &covered)?;
        let cover = Cover {
            b,
            t,
            covered,
            assignment,
        };
        cover.check()?;
        Ok(cover)
    }

    pub(crate) fn from_raw(b: PointSet, t: PointSet, covered: PointSet, assignment: Vec<Assignment>) -> Self {
        debug_assert_eq!(covered.len(), assignment.len());
        Cover {
            b,
            t,
            covered,
            assignment,
        }
    }

    pub fn b(&self) -> &PointSet {
        &self.b
    }

    pub fn t(&self) -> &PointSet {
        &self.t
    }

    pub fn covered(&self) -> &PointSet {
        &self.covered
    }

    pub fn assignment(&self) -> &[Assignment] {
        &self.assignment
    }

    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    pub fn cost(&self) -> usize {
        self.b.len() + self.t.len()
    }

    /// Assignment of an arbitrary point, if it is one of the covered points.
    pub fn assignment_of(&self, p: &[BigRational]) -> Option<Assignment> {
        self.covered.position(p).map(|i| self.assignment[i])
    }

    fn check(&self) -> Result<()> {
        if self.t.iter().any(|p| is_origin(p)) {
            return Err(Error::InvalidCover("the origin is a translation".into()));
        }
        if self.assignment.len() != self.covered.len() {
            return Err(Error::InvalidCover("assignment length differs from the covered set".into()));
        }
        for (c, a) in self.covered.iter().zip(&self.assignment) {
            if a.b >= self.b.len() || a.t.is_some_and(|t| t >= self.t.len()) {
                return Err(Error::InvalidCover(format!("index out of range for {}", show(c))));
            }
            let sum = match a.t {
                Some(t) => add_points(self.b.get(a.b), self.t.get(t)),
                None => self.b.get(a.b).clone(),
            };
            if &sum != c {
                return Err(Error::InvalidCover(format!("assignment of {} does not add up", show(c))));
            }
        }
        Ok(())
    }

    /// A cover of `targets` that keeps only the `B` and `T` points its
    /// assignments use, in their original order. Every target must already be
    /// covered.
    pub fn restrict(&self, targets: &PointSet) -> Result<Cover> {
        let mut used_b = vec![false; self.b.len()];
        let mut used_t = vec![false; self.t.len()];
        let mut picks = Vec::with_capacity(targets.len());
        for p in targets.iter() {
            let a = self
                .assignment_of(p)
                .ok_or_else(|| Error::InvalidCover(format!("point {} is not covered", show(p))))?;
            used_b[a.b] = true;
            if let Some(t) = a.t {
                used_t[t] = true;
            }
            picks.push(a);
        }
        let remap = |used: &[bool], from: &PointSet| {
            let mut map = vec![usize::MAX; used.len()];
            let mut out = PointSet::new(from.dim());
            for (i, &u) in used.iter().enumerate() {
                if u {
                    map[i] = out.insert(from.get(i).clone()).expect("same dimension");
                }
            }
            (out, map)
        };
        let (b, bmap) = remap(&used_b, &self.b);
        let (t, tmap) = remap(&used_t, &self.t);
        let assignment = picks
            .into_iter()
            .map(|a| Assignment {
                b: bmap[a.b],
                t: a.t.map(|j| tmap[j]),
            })
            .collect();
        Ok(Cover::from_raw(b, t, targets.clone(), assignment))
    }
}

fn check_dims(b: &PointSet, t: &PointSet, covered: &PointSet) -> Result<()> {
    if b.dim() != covered.dim() || t.dim() != covered.dim() {
        return Err(Error::Dimension("cover parts have different dimensions".into()));
    }
    if t.iter().any(|p| is_origin(p)) {
        return Err(Error::InvalidCover("the origin is a translation".into()));
    }
    Ok(())
}

fn show(p: &[BigRational]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// True when `cover` is internally consistent and covers every point of `c`.
pub fn verify_cover(c: &PointSet, cover: &Cover) -> bool {
    if c.dim() != cover.dim() || cover.check().is_err() {
        return false;
    }
    c.iter().all(|p| cover.covered.contains(p))
}

/// Smallest integer `s` with `s * s >= n`.
pub fn ceil_sqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as u128;
    while s * s > n {
        s -= 1;
    }
    while s * s < n {
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[&[i64]]) -> PointSet {
        let dim = points.first().map_or(0, |p| p.len());
        PointSet::from_points(dim, points.iter().map(|p| int_point(p))).unwrap()
    }

    #[test]
    fn point_sets_drop_duplicates() {
        let s = set(&[&[1, 2], &[0, 0], &[1, 2]]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.position(&int_point(&[0, 0])), Some(1));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let mut s = PointSet::new(2);
        assert!(s.insert(int_point(&[1])).is_err());
    }

    #[test]
    fn uncovered_point_fails_verification() {
        let c = set(&[&[0, 0], &[5, 5]]);
        let err = Cover::from_parts(set(&[&[0, 0]]), set(&[&[1, 1]]), c.clone()).unwrap_err();
        assert!(matches!(err, Error::InvalidCover(_)));

        let partial = Cover::from_parts(set(&[&[0, 0]]), set(&[&[1, 1]]), set(&[&[0, 0], &[1, 1]])).unwrap();
        assert!(!verify_cover(&c, &partial));
    }

    #[test]
    fn origin_is_not_a_translation() {
        let c = set(&[&[0]]);
        assert!(Cover::from_parts(set(&[&[0]]), set(&[&[0]]), c).is_err());
    }

    #[test]
    fn lowest_b_index_wins() {
        let b = set(&[&[0], &[1]]);
        let t = set(&[&[1]]);
        let cover = Cover::from_parts(b, t, set(&[&[1]])).unwrap();
        assert_eq!(cover.assignment(), &[Assignment { b: 0, t: Some(0) }]);
    }

    #[test]
    fn restriction_drops_unused_points() {
        let b = set(&[&[0], &[10]]);
        let t = set(&[&[1], &[2]]);
        let all = set(&[&[0], &[1], &[2], &[10], &[11]]);
        let cover = Cover::from_parts(b, t, all).unwrap();
        let small = cover.restrict(&set(&[&[1], &[0]])).unwrap();
        assert_eq!(small.cost(), 2);
        assert!(verify_cover(&set(&[&[0], &[1]]), &small));
    }

    #[test]
    fn integer_square_roots() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(20), 5);
        assert_eq!(ceil_sqrt(25), 5);
        assert_eq!(ceil_sqrt(26), 6);
    }
}
