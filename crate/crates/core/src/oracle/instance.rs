use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::simplex::nonneg_solution;
use super::vertices::{polyhedron_vertices_with_caps, VertexSet};
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::linalg::{int_rank, IntMatrix, RatMatrix};

/// Per-coordinate integer bounds `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntBox {
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
}

impl IntBox {
    pub fn new(lower: Vec<BigInt>, upper: Vec<BigInt>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Dimension(format!(
                "box bounds of lengths {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::Precondition(format!(
                "box coordinate {i} has lower bound {} above upper bound {}",
                lower[i], upper[i]
            )));
        }
        Ok(IntBox { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Number of integer points, saturating.
    pub fn volume(&self) -> u128 {
        self.lower.iter().zip(&self.upper).fold(1u128, |acc, (lo, hi)| {
            let w: BigInt = hi - lo + 1;
            acc.saturating_mul(u128::try_from(w).unwrap_or(u128::MAX))
        })
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (lo, hi))| {
            *v >= BigRational::from_integer(lo.clone()) && *v <= BigRational::from_integer(hi.clone())
        })
    }

    /// Smallest integer box containing the given points.
    pub fn hull_of(dim: usize, points: &[Vec<BigRational>]) -> Option<Self> {
        let first = points.first()?;
        let mut lower: Vec<BigInt> = first.iter().map(|x| x.floor().to_integer()).collect();
        let mut upper: Vec<BigInt> = first.iter().map(|x| x.ceil().to_integer()).collect();
        for p in points {
            for i in 0..dim {
                let lo = p[i].floor().to_integer();
                let hi = p[i].ceil().to_integer();
                if lo < lower[i] {
                    lower[i] = lo;
                }
                if hi > upper[i] {
                    upper[i] = hi;
                }
            }
        }
        Some(IntBox { lower, upper })
    }
}

/// The system `A x <= b` with `A` of full column rank, optionally with a box
/// that must contain the polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    a: IntMatrix,
    b: Vec<BigInt>,
    bbox: Option<IntBox>,
}

impl Instance {
    pub fn new(a: IntMatrix, b: Vec<BigInt>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::Dimension(format!(
                "A has {} rows but b has {} entries",
                a.rows(),
                b.len()
            )));
        }
        if a.cols() == 0 {
            return Err(Error::EmptyInput("A has no columns"));
        }
        let r = int_rank(&a);
        if r < a.cols() {
            return Err(Error::RankDeficient {
                rank: r,
                expected: a.cols(),
            });
        }
        Ok(Instance { a, b, bbox: None })
    }

    pub fn from_i64<R: AsRef<[i64]>>(a: &[R], b: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(a)?, b.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Attaches a box. Whether it contains the polyhedron is checked when the
    /// box is first needed.
    pub fn with_box(mut self, bbox: IntBox) -> Result<Self> {
        if bbox.dim() != self.n() {
            return Err(Error::Dimension(format!(
                "box of dimension {} for {} variables",
                bbox.dim(),
                self.n()
            )));
        }
        self.bbox = Some(bbox);
        Ok(self)
    }

    /// The system `A x <= b, lower <= x <= upper` with the box rows appended
    /// as `I x <= upper` and `-I x <= -lower`. Always bounded.
    pub fn truncated(a: &IntMatrix, b: &[BigInt], bbox: IntBox) -> Result<Self> {
        let n = a.cols();
        if bbox.dim() != n {
            return Err(Error::Dimension(format!("box of dimension {} for {n} variables", bbox.dim())));
        }
        let eye = IntMatrix::identity(n);
        let neg = eye.map(|x| -x);
        let rows = a.vstack(&eye)?.vstack(&neg)?;
        let mut rhs = b.to_vec();
        rhs.extend(bbox.upper.iter().cloned());
        rhs.extend(bbox.lower.iter().map(|x| -x));
        Instance::new(rows, rhs)?.with_box(bbox)
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn bbox(&self) -> Option<&IntBox> {
        self.bbox.as_ref()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        (0..self.m()).all(|i| {
            let lhs = self
                .a
                .row(i)
                .iter()
                .zip(x)
                .fold(BigRational::zero(), |acc, (a, v)| acc + BigRational::from_integer(a.clone()) * v);
            lhs <= BigRational::from_integer(self.b[i].clone())
        })
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        (0..self.m()).all(|i| {
            let lhs = self.a.row(i).iter().zip(x).fold(BigInt::zero(), |acc, (a, v)| acc + a * v);
            lhs <= self.b[i]
        })
    }

    /// Whether `{d : A d <= 0} = {0}`, i.e. every nonempty `P(A, b)` is
    /// bounded. Holds iff the rows of `A` positively span, which for a full
    /// column rank `A` means `A^T y = 0` for some `y >= 1`.
    pub fn is_bounded(&self) -> bool {
        recession_cone_is_trivial(&self.a)
    }

    /// Integer box for enumeration: the attached box after checking that it
    /// contains every vertex, or the hull of the vertices. `None` when the
    /// polyhedron is empty.
    pub fn enumeration_box(&self, caps: &OracleCaps) -> Result<Option<(IntBox, VertexSet)>> {
        let vs = polyhedron_vertices_with_caps(self, caps)?;
        if vs.infeasible {
            return Ok(None);
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let points = vs.points();
        match &self.bbox {
            Some(bx) => {
                if let Some(p) = points.iter().find(|p| !bx.contains(p)) {
                    return Err(Error::Precondition(format!(
                        "box does not contain the vertex ({})",
                        p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                    )));
                }
                Ok(Some((bx.clone(), vs)))
            }
            None => Ok(Some((IntBox::hull_of(self.n(), &points).expect("nonempty"), vs))),
        }
    }
}

pub(crate) fn recession_cone_is_trivial(a: &IntMatrix) -> bool {
    if int_rank(a) < a.cols() {
        return false;
    }
    // y = 1 + z with z >= 0 and A^T z = -A^T 1
    let at: RatMatrix = a.transpose().to_rat();
    let ones = vec![BigRational::one(); a.rows()];
    let rhs: Vec<BigRational> = (0..at.rows())
        .map(|i| -at.row(i).iter().zip(&ones).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
        .collect();
    nonneg_solution(&at, &rhs).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(Instance::from_i64(&[[1, 0]], &[1, 2]), Err(Error::Dimension(_))));
        assert!(matches!(
            Instance::from_i64(&[[1, 2], [2, 4]], &[0, 0]),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn boundedness() {
        let square = Instance::from_i64(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[1, 1, 0, 0]).unwrap();
        assert!(square.is_bounded());
        let cone = Instance::from_i64(&[[1, 0], [0, 1]], &[1, 1]).unwrap();
        assert!(!cone.is_bounded());
        let simplex = Instance::from_i64(&[[-1, 0], [0, -1], [1, 1]], &[0, 0, 1]).unwrap();
        assert!(simplex.is_bounded());
    }

    #[test]
    fn derived_box() {
        let inst = Instance::from_i64(&[[2], [-2]], &[1, 1]).unwrap();
        let (bx, _) = inst.enumeration_box(&OracleCaps::default()).unwrap().unwrap();
        assert_eq!(bx.lower, int_vec(&[-1]));
        assert_eq!(bx.upper, int_vec(&[1]));
    }

    #[test]
    fn box_must_contain_the_polyhedron() {
        let inst = Instance::from_i64(&[[1], [-1]], &[3, 0])
            .unwrap()
            .with_box(IntBox::new(int_vec(&[0]), int_vec(&[2])).unwrap())
            .unwrap();
        assert!(matches!(inst.enumeration_box(&OracleCaps::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn unbounded_is_rejected_even_with_a_box() {
        let inst = Instance::from_i64(&[[1, 0], [0, 1]], &[1, 1])
            .unwrap()
            .with_box(IntBox::new(int_vec(&[-5, -5]), int_vec(&[5, 5])).unwrap())
            .unwrap();
        assert!(matches!(inst.enumeration_box(&OracleCaps::default()), Err(Error::Unbounded)));
    }

    #[test]
    fn truncation_is_bounded() {
        let a = IntMatrix::from_i64(&[[1, 0], [0, 1]]).unwrap();
        let bx = IntBox::new(int_vec(&[-2, -2]), int_vec(&[2, 2])).unwrap();
        let inst = Instance::truncated(&a, &int_vec(&[1, 1]), bx).unwrap();
        assert_eq!(inst.m(), 6);
        assert!(inst.is_bounded());
    }
}
