//! Right-hand sides whose feasible basic solutions have large slack in every
//! non-basic row.
//!
//! For a feasible basis `I` with vertex `x* = A_I^-1 b_I` and a row `j` not
//! in `I`, the proximity inequality is `A_j x* + (n Dmax)^2 <= b_j`, where
//! `Dmax` is the largest absolute minor of `A` of any size. A right-hand side
//! is good when `P(A, b)` is empty or the inequality holds for every such
//! pair. All tests are done after scaling by `det_I = |det A_I|`, which makes
//! them integral.

use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{binomial, delta_with_cap, det, int_rank, inverse, DeltaMode, IntMatrix, RatMatrix, DEFAULT_SUBMATRIX_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisInfo {
    pub rows: Vec<usize>,
    /// `|det A_I|`.
    pub det: BigInt,
    pub inv: RatMatrix,
    /// `det_I * A_I^-1`, integral by Cramer's rule.
    pub scaled_inv: IntMatrix,
    /// Set once a right-hand side is bound.
    pub feasible: Option<bool>,
}

impl BasisInfo {
    /// `det_I * x*` for the basic solution of `b`.
    pub fn scaled_vertex(&self, b: &[BigInt]) -> Vec<BigInt> {
        let bi: Vec<&BigInt> = self.rows.iter().map(|&i| &b[i]).collect();
        (0..self.scaled_inv.rows())
            .map(|r| {
                self.scaled_inv
                    .row(r)
                    .iter()
                    .zip(&bi)
                    .fold(BigInt::zero(), |acc, (x, y)| acc + x * *y)
            })
            .collect()
    }

    pub fn vertex(&self, b: &[BigInt]) -> Vec<BigRational> {
        self.scaled_vertex(b)
            .into_iter()
            .map(|v| BigRational::new(v, self.det.clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSetReport {
    pub in_good_set: bool,
    /// Pairs `(I, j)` with `I` feasible and the proximity inequality failing
    /// for row `j`.
    pub violations: Vec<(Vec<usize>, usize)>,
    pub empty_p: bool,
}

/// One family of parallel bad hyperplanes
/// `det_I b_j = det_I A_j A_I^-1 b_I + r` for `r = 0, ..., residues - 1`,
/// stored as integer coefficients `c` with `c . b = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneFamily {
    pub basis: Vec<usize>,
    pub j: usize,
    pub det: BigInt,
    pub coeffs: Vec<BigInt>,
    /// `det_I (n Dmax)^2`.
    pub residues: BigInt,
}

impl HyperplaneFamily {
    pub fn value(&self, b: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(b).fold(BigInt::zero(), |acc, (c, x)| acc + c * x)
    }

    /// Residue `r` of the hyperplane through `b`, if `b` lies on one.
    pub fn residue(&self, b: &[BigInt]) -> Option<BigInt> {
        let v = self.value(b);
        (!v.is_negative() && v < self.residues).then_some(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadHyperplane {
    pub basis: Vec<usize>,
    pub j: usize,
    pub r: BigInt,
    /// `coeffs . b = r`.
    pub coeffs: Vec<BigInt>,
}

/// Data shared by every right-hand side for a fixed `A`: the bases, their
/// inverses and `Dmax`, computed once.
#[derive(Debug)]
pub struct Asymptotic {
    pub(crate) a: IntMatrix,
    delta_max: BigInt,
    slack: BigInt,
    bases: Vec<BasisInfo>,
    pub(crate) w_cache: Vec<OnceLock<Result<IntMatrix>>>,
}

impl Asymptotic {
    pub fn new(a: &IntMatrix) -> Result<Self> {
        Self::with_cap(a, DEFAULT_SUBMATRIX_CAP)
    }

    pub fn with_cap(a: &IntMatrix, cap: u128) -> Result<Self> {
        let (m, n) = (a.rows(), a.cols());
        if n == 0 {
            return Err(Error::EmptyInput("A has no columns"));
        }
        let r = int_rank(a);
        if r < n {
            return Err(Error::RankDeficient { rank: r, expected: n });
        }
        let count = binomial(m, n);
        if count > cap {
            return Err(Error::cap("bases", count, cap));
        }
        let delta_max = delta_with_cap(a, DeltaMode::Max, cap)?;
        let nd = BigInt::from(n) * &delta_max;
        let slack = &nd * &nd;
        let mut bases = Vec::new();
        for rows in (0..m).combinations(n) {
            let ai = a.select_rows(&rows);
            let d = det(&ai)?;
            if d.is_zero() {
                continue;
            }
            let inv = inverse(&ai.to_rat())?;
            let dd = BigRational::from_integer(d.abs());
            let scaled_inv = inv
                .map(|x| x * &dd)
                .to_int()
                .ok_or_else(|| Error::Consistency("scaled inverse is not integral".into()))?;
            bases.push(BasisInfo {
                rows,
                det: d.abs(),
                inv,
                scaled_inv,
                feasible: None,
            });
        }
        let w_cache = (0..bases.len()).map(|_| OnceLock::new()).collect();
        Ok(Asymptotic {
            a: a.clone(),
            delta_max,
            slack,
            bases,
            w_cache,
        })
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn delta_max(&self) -> &BigInt {
        &self.delta_max
    }

    /// `(n Dmax)^2`.
    pub fn slack(&self) -> &BigInt {
        &self.slack
    }

    /// All bases in lexicographic order, with no right-hand side bound.
    pub fn bases(&self) -> &[BasisInfo] {
        &self.bases
    }

    fn check_b(&self, b: &[BigInt]) -> Result<()> {
        if b.len() != self.m() {
            return Err(Error::Dimension(format!(
                "b has {} entries for {} rows",
                b.len(),
                self.m()
            )));
        }
        Ok(())
    }

    fn row_dot(&self, i: usize, x: &[BigInt]) -> BigInt {
        self.a.row(i).iter().zip(x).fold(BigInt::zero(), |acc, (p, q)| acc + p * q)
    }

    fn is_feasible_scaled(&self, basis: &BasisInfo, sx: &[BigInt], b: &[BigInt]) -> bool {
        (0..self.m()).all(|i| self.row_dot(i, sx) <= &basis.det * &b[i])
    }

    /// `det_I b_j - det_I A_j x*`.
    fn scaled_slack(&self, basis: &BasisInfo, sx: &[BigInt], b: &[BigInt], j: usize) -> BigInt {
        &basis.det * &b[j] - self.row_dot(j, sx)
    }

    /// The bases with their feasibility for `b` recorded.
    pub fn bases_for(&self, b: &[BigInt]) -> Result<Vec<BasisInfo>> {
        self.check_b(b)?;
        Ok(self
            .bases
            .iter()
            .map(|basis| {
                let sx = basis.scaled_vertex(b);
                BasisInfo {
                    feasible: Some(self.is_feasible_scaled(basis, &sx, b)),
                    ..basis.clone()
                }
            })
            .collect())
    }

    /// Evaluates `A_j A_I^-1 b_I + (n Dmax)^2 <= b_j` for a feasible basis.
    pub fn proximity_check(&self, b: &[BigInt], basis: &BasisInfo, j: usize) -> Result<bool> {
        self.check_b(b)?;
        if basis.rows.contains(&j) || j >= self.m() {
            return Err(Error::Precondition(format!("row {j} is not a non-basic row")));
        }
        let sx = basis.scaled_vertex(b);
        if !self.is_feasible_scaled(basis, &sx, b) {
            return Err(Error::Precondition(format!("basis {:?} is infeasible", basis.rows)));
        }
        Ok(self.scaled_slack(basis, &sx, b, j) >= &basis.det * &self.slack)
    }

    pub fn in_good_set(&self, b: &[BigInt]) -> Result<GoodSetReport> {
        self.check_b(b)?;
        let mut any_feasible = false;
        let mut violations = Vec::new();
        for basis in &self.bases {
            let sx = basis.scaled_vertex(b);
            if !self.is_feasible_scaled(basis, &sx, b) {
                continue;
            }
            any_feasible = true;
            let need = &basis.det * &self.slack;
            for j in (0..self.m()).filter(|j| !basis.rows.contains(j)) {
                if self.scaled_slack(basis, &sx, b, j) < need {
                    violations.push((basis.rows.clone(), j));
                }
            }
        }
        let empty_p = !any_feasible;
        Ok(GoodSetReport {
            in_good_set: empty_p || violations.is_empty(),
            violations,
            empty_p,
        })
    }

    pub fn hyperplane_families(&self) -> Vec<HyperplaneFamily> {
        let mut out = Vec::new();
        for basis in &self.bases {
            for j in (0..self.m()).filter(|j| !basis.rows.contains(j)) {
                let mut coeffs = vec![BigInt::zero(); self.m()];
                coeffs[j] = basis.det.clone();
                // det_I A_j A_I^-1 as a row vector over the basis rows
                for (l, &i) in basis.rows.iter().enumerate() {
                    let c = (0..self.n()).fold(BigInt::zero(), |acc, k| acc + &self.a[(j, k)] * &basis.scaled_inv[(k, l)]);
                    coeffs[i] = -c;
                }
                out.push(HyperplaneFamily {
                    basis: basis.rows.clone(),
                    j,
                    residues: &basis.det * &self.slack,
                    det: basis.det.clone(),
                    coeffs,
                });
            }
        }
        out
    }

    /// Whether `b` lies on one of the bad hyperplanes.
    pub fn on_bad_hyperplane(&self, b: &[BigInt]) -> bool {
        self.hyperplane_families().iter().any(|f| f.residue(b).is_some())
    }

    /// Every bad hyperplane, one per residue.
    pub fn bad_hyperplanes(&self, cap: u128) -> Result<Vec<BadHyperplane>> {
        let families = self.hyperplane_families();
        let total = families.iter().fold(0u128, |acc, f| {
            acc.saturating_add(u128::try_from(&f.residues).unwrap_or(u128::MAX))
        });
        if total > cap {
            return Err(Error::cap("bad hyperplanes", total, cap));
        }
        let mut out = Vec::with_capacity(total as usize);
        for f in families {
            let mut r = BigInt::zero();
            while r < f.residues {
                out.push(BadHyperplane {
                    basis: f.basis.clone(),
                    j: f.j,
                    r: r.clone(),
                    coeffs: f.coeffs.clone(),
                });
                r += 1;
            }
        }
        Ok(out)
    }
}

/// Exact evaluation of the proximity inequality for the basis `rows`.
pub fn proximity_check(a: &IntMatrix, b: &[BigInt], rows: &[usize], j: usize) -> Result<bool> {
    let ctx = Asymptotic::new(a)?;
    let basis = ctx
        .bases()
        .iter()
        .find(|x| x.rows == rows)
        .ok_or_else(|| Error::Precondition(format!("rows {rows:?} do not form a basis")))?;
    ctx.proximity_check(b, basis, j)
}

/// ```
/// use integrality::asymptotic::in_good_set;
/// use integrality::linalg::{int_vec, IntMatrix};
///
/// let a = IntMatrix::from_i64(&[[1], [-1]]).unwrap();
/// // 0 <= x <= 10 leaves slack 10 at both ends
/// assert!(in_good_set(&a, &int_vec(&[10, 0])).unwrap().in_good_set);
/// // x = 0 exactly
/// assert!(!in_good_set(&a, &int_vec(&[0, 0])).unwrap().in_good_set);
/// // empty
/// assert!(in_good_set(&a, &int_vec(&[0, -1])).unwrap().empty_p);
/// ```
pub fn in_good_set(a: &IntMatrix, b: &[BigInt]) -> Result<GoodSetReport> {
    Asymptotic::new(a)?.in_good_set(b)
}

pub fn bad_hyperplanes(a: &IntMatrix, cap: u128) -> Result<Vec<BadHyperplane>> {
    Asymptotic::new(a)?.bad_hyperplanes(cap)
}
