//! Integer feasibility of `A x <= b` for a good `b` through the square system
//! of one feasible basis.
//!
//! Every vertex `z` of the mixed-integer hull of `A_I x <= b_I` lies within
//! `n Dmax` of the basic solution `x*` in the maximum norm, so enumerating
//! fibers inside that box finds them. The objective `c = 1^T A_I` is bounded
//! on the cone `A_I x <= b_I` with optimal face a polytope, so the
//! lexicographically smallest maximiser among the candidates is a vertex of
//! the hull. For a good `b` it satisfies the remaining rows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::goodset::Asymptotic;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, DEFAULT_SUBMATRIX_CAP};
use crate::oracle::{wmip_candidates, IntBox, Instance, OracleCaps};
use crate::wsynth::{synthesize, SynthMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// `P(A, b)` is empty.
    InfeasibleLp,
    Reduced {
        basis: Vec<usize>,
        /// Integrality matrix of the square system `A_I`.
        w: IntMatrix,
        feasible: bool,
        /// An integer point of `P(A, b)` when `feasible`.
        witness: Option<Vec<BigInt>>,
    },
    /// `b` is not good; the violated pairs are listed.
    NotApplicable { violations: Vec<(Vec<usize>, usize)> },
}

impl Asymptotic {
    /// Integrality matrix of `A_I` for the basis at position `idx`, built once.
    fn basis_w(&self, idx: usize) -> Result<IntMatrix> {
        self.w_cache[idx]
            .get_or_init(|| {
                let ai = self.a.select_rows(&self.bases()[idx].rows);
                synthesize(&ai, SynthMode::Best).map(|s| s.w)
            })
            .clone()
    }

    pub fn reduce_and_solve(&self, b: &[BigInt]) -> Result<Reduction> {
        let report = self.in_good_set(b)?;
        if report.empty_p {
            return Ok(Reduction::InfeasibleLp);
        }
        if !report.in_good_set {
            return Ok(Reduction::NotApplicable {
                violations: report.violations,
            });
        }
        let bases = self.bases_for(b)?;
        let idx = bases
            .iter()
            .position(|x| x.feasible == Some(true))
            .ok_or_else(|| Error::Consistency("nonempty polyhedron without a feasible basis".into()))?;
        let basis = &bases[idx];
        let w = self.basis_w(idx)?;

        let n = self.n();
        let radius = BigInt::from(n) * self.delta_max();
        let x = basis.vertex(b);
        let lower = x.iter().map(|v| v.floor().to_integer() - &radius).collect();
        let upper = x.iter().map(|v| v.ceil().to_integer() + &radius).collect();
        let ai = self.a.select_rows(&basis.rows);
        let bi: Vec<BigInt> = basis.rows.iter().map(|&i| b[i].clone()).collect();
        let inst = Instance::truncated(&ai, &bi, IntBox::new(lower, upper)?)?;
        let cand = wmip_candidates(&inst, &w, &OracleCaps::default())?;

        let c: Vec<BigRational> = (0..n)
            .map(|k| BigRational::from_integer((0..n).fold(BigInt::zero(), |acc, i| acc + &ai[(i, k)])))
            .collect();
        let value = |p: &[BigRational]| -> BigRational { p.iter().zip(&c).map(|(a, b)| a * b).sum() };
        // candidates are sorted, so the first maximiser is the lexicographic minimum
        let mut best: Option<(&[BigRational], BigRational)> = None;
        for v in &cand.vertices {
            let val = value(&v.point);
            if best.as_ref().is_none_or(|(_, bv)| val > *bv) {
                best = Some((&v.point, val));
            }
        }
        let (z, _) = best.ok_or_else(|| Error::Consistency("mixed-integer hull of a basis cone is empty".into()))?;
        let z: Vec<BigInt> = z
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Consistency("fractional vertex for a certified integrality matrix".into()))?;
        let full = Instance::new(self.a.clone(), b.to_vec())?;
        if !full.contains_int(&z) {
            return Err(Error::Consistency("vertex of the reduced hull violates a non-basic row".into()));
        }
        Ok(Reduction::Reduced {
            basis: basis.rows.clone(),
            w,
            feasible: true,
            witness: Some(z),
        })
    }
}

/// ```
/// use integrality::asymptotic::{reduce_and_solve, Reduction};
/// use integrality::linalg::{int_vec, IntMatrix};
///
/// let a = IntMatrix::from_i64(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
/// match reduce_and_solve(&a, &int_vec(&[20, 20, 20])).unwrap() {
///     Reduction::Reduced { feasible, .. } => assert!(feasible),
///     other => panic!("{other:?}"),
/// }
/// ```
pub fn reduce_and_solve(a: &IntMatrix, b: &[BigInt]) -> Result<Reduction> {
    Asymptotic::with_cap(a, DEFAULT_SUBMATRIX_CAP)?.reduce_and_solve(b)
}
