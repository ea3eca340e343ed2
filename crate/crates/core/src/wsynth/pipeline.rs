//! End-to-end synthesis of an integrality matrix for a full column rank `A`.
//!
//! After the Hermite normal form `H = P A U`, the rows of `H` split into an
//! identity block, the triangular rows `A1_I` carrying the alphas, and the
//! remaining rows `A2`. A cover of the columns of `A1_I` (box and translates)
//! is multiplied with a trivial cover of a second block and turned into a
//! 0/1 matrix `W`:
//!
//! - the first route uses a full row rank subset of `A2` as the second block;
//! - the second route writes `A2 = [R Q] A1` and uses `[R 0]`, whose distinct
//!   columns are controlled by the group reduction.
//!
//! In both routes `W` is certified against `H`, and `W U^-1` is returned for
//! the original coordinates.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::bound::{box_factor, c_bound, fits, k_bound};
use super::build::{build_w, WFactorization};
use super::certify::{certify, Certificate};
use super::group::{group_reduce, GroupReduction};
use crate::covering::{choose_k, cover_box, cover_product, cover_trivial, Cover, KChoice, PointSet};
use crate::error::{Error, Result};
use crate::linalg::{
    delta_with_cap, hnf, int_rank, inverse, row_basis, unimodular_inverse, DeltaMode, HnfForm, IntMatrix, RatMatrix,
    DEFAULT_SUBMATRIX_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SynthMode {
    Part1,
    Part2,
    /// Runs both routes and keeps the smaller `W`, preferring the first on
    /// ties.
    Best,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Second block: a full row rank subset of `A2`.
    Part1,
    /// Second block: `[R 0]` from `A2 = [R Q] A1`.
    Part2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    /// Determinant of the top block of the normal form.
    pub delta: BigInt,
    pub ell: usize,
    /// Rank of `A2`.
    pub r: usize,
    pub delta_a: BigInt,
    /// `None` when `A2` has rank 0.
    pub delta_a2: Option<BigInt>,
    pub c_a: BigUint,
    pub c_a2: BigUint,
    /// `4 sqrt(delta) + log2(delta)`.
    pub box_factor: f64,
    /// `box_factor * min(c_a2, c_a)`.
    pub bound: f64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        fits(self.k, self.bound)
    }
}

#[derive(Clone, Debug)]
pub struct Synthesis {
    pub route: Route,
    pub hnf: HnfForm,
    /// Integrality matrix in the coordinates of the input.
    pub w: IntMatrix,
    /// Integrality matrix in normal-form coordinates, `W = W_hnf U^-1`.
    pub w_hnf: IntMatrix,
    /// `None` when there is nothing to cover.
    pub factorization: Option<WFactorization>,
    /// Certificate for `W_hnf` against the rows of the normal form.
    pub certificate: Certificate,
    pub k_choice: Option<KChoice>,
    pub group: Option<GroupReduction>,
    pub report: BoundReport,
}

impl Synthesis {
    pub fn k(&self) -> usize {
        self.w.rows()
    }

    /// Designated rows of the normal form, as row indices of the input.
    pub fn original_c_rows(&self) -> Vec<usize> {
        self.certificate
            .c_rows
            .iter()
            .map(|&i| self.hnf.row_permutation[i])
            .collect()
    }
}

struct Prepared {
    form: HnfForm,
    u_inv: IntMatrix,
    n: usize,
    ell: usize,
    a_i: IntMatrix,
    a1: IntMatrix,
    a2_bar: IntMatrix,
    cover_i: Cover,
    k_choice: Option<KChoice>,
    report: BoundReport,
}

fn prepare(a: &IntMatrix, cap: u128) -> Result<Prepared> {
    let form = hnf(a)?;
    let n = form.n();
    let ell = form.ell;
    let u_inv = unimodular_inverse(&form.u)?;
    let a_i = form.lower_block();
    let a1 = form.top();
    let a2 = form.remainder();
    let basis = row_basis(&a2.to_rat());
    let r = basis.len();
    let a2_bar = a2.select_rows(&basis);

    let (cover_i, k_choice) = if ell == 0 {
        let origin = PointSet::from_points(0, [Vec::new()])?;
        (cover_trivial(&origin)?, None)
    } else {
        let alphas: Vec<u64> = form
            .alphas
            .iter()
            .map(|x| x.to_u64().ok_or_else(|| Error::Precondition(format!("alpha {x} is too large"))))
            .collect::<Result<_>>()?;
        let kc = choose_k(&alphas)?;
        let full = cover_box(&form.lambda(), &kc)?;
        (full.restrict(&PointSet::from_int_columns(&a_i))?, Some(kc))
    };

    let delta_a = delta_with_cap(a, DeltaMode::FullRank, cap)?;
    let delta_a2 = if r == 0 {
        None
    } else {
        Some(delta_with_cap(&a2, DeltaMode::FullRank, cap)?)
    };
    let c_a = c_bound(r, &delta_a)?;
    let c_a2 = match &delta_a2 {
        Some(d) => c_bound(r, d)?,
        None => BigUint::from(1u8),
    };
    let report = BoundReport {
        k: 0,
        delta: form.delta.clone(),
        ell,
        r,
        box_factor: box_factor(&form.delta),
        bound: k_bound(&form.delta, &c_a2, &c_a),
        delta_a,
        delta_a2,
        c_a,
        c_a2,
    };
    Ok(Prepared {
        u_inv,
        n,
        ell,
        a_i,
        a1,
        a2_bar,
        cover_i,
        k_choice,
        report,
        form,
    })
}

fn run(p: &Prepared, route: Route) -> Result<Synthesis> {
    let (lower, group) = match route {
        Route::Part1 => (p.a2_bar.to_rat(), None),
        Route::Part2 => {
            let y = &p.a2_bar.to_rat() * &inverse(&p.a1.to_rat())?;
            let group = if y.rows() > 0 { Some(group_reduce(&p.a1, &y)?) } else { None };
            let split = p.n - p.ell;
            let r0 = RatMatrix::from_fn(y.rows(), p.n, |i, j| {
                if j < split {
                    y[(i, j)].clone()
                } else {
                    BigRational::zero()
                }
            });
            (r0, group)
        }
    };
    let c = p.a_i.to_rat().vstack(&lower)?;

    let (w_hnf, factorization) = if c.rows() == 0 {
        (IntMatrix::zeros(0, p.n), None)
    } else {
        let second = cover_trivial(&PointSet::from_columns(&lower))?;
        let product = cover_product(&p.cover_i, &second);
        let cover = product.restrict(&PointSet::from_columns(&c))?;
        let f = build_w(&c, &cover)?;
        (f.w.clone(), Some(f))
    };

    let c_rows: Vec<usize> = (p.n - p.ell..p.form.h.rows()).collect();
    let certificate = certify(&p.form.h, &c_rows, &w_hnf)?;
    let w = &w_hnf * &p.u_inv;
    let mut report = p.report.clone();
    report.k = w.rows();
    if !report.holds() {
        return Err(Error::Consistency(format!(
            "{} rows exceed the bound {}",
            report.k, report.bound
        )));
    }
    Ok(Synthesis {
        route,
        hnf: p.form.clone(),
        w,
        w_hnf,
        factorization,
        certificate,
        k_choice: p.k_choice.clone(),
        group,
        report,
    })
}

/// Synthesises a certified integrality matrix for `A`.
///
/// ```
/// use integrality::linalg::IntMatrix;
/// use integrality::wsynth::{synthesize, SynthMode};
///
/// let a = IntMatrix::from_i64(&[[1, 0, 0], [0, 1, 0], [2, 4, 5], [1, 4, 4], [2, 2, 3]]).unwrap();
/// let s = synthesize(&a, SynthMode::Best).unwrap();
/// assert!(s.report.holds());
/// assert_eq!(s.w.cols(), 3);
/// ```
pub fn synthesize(a: &IntMatrix, mode: SynthMode) -> Result<Synthesis> {
    synthesize_with_cap(a, mode, DEFAULT_SUBMATRIX_CAP)
}

pub fn synthesize_with_cap(a: &IntMatrix, mode: SynthMode, cap: u128) -> Result<Synthesis> {
    if int_rank(a) < a.cols() {
        return Err(Error::RankDeficient {
            rank: int_rank(a),
            expected: a.cols(),
        });
    }
    let p = prepare(a, cap)?;
    match mode {
        SynthMode::Part1 => run(&p, Route::Part1),
        SynthMode::Part2 => run(&p, Route::Part2),
        SynthMode::Best => {
            let one = run(&p, Route::Part1)?;
            let two = run(&p, Route::Part2)?;
            Ok(if two.k() < one.k() { two } else { one })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::distinct_columns;
    use crate::wsynth::{check_block_structure, is_tu, TuMethod};

    fn worked_example() -> IntMatrix {
        IntMatrix::from_i64(&[[1, 0, 0], [0, 1, 0], [2, 4, 5], [1, 4, 4], [2, 2, 3]]).unwrap()
    }

    #[test]
    fn unimodular_square_needs_nothing() {
        let a = IntMatrix::from_i64(&[[2, 1], [1, 1]]).unwrap();
        let s = synthesize(&a, SynthMode::Best).unwrap();
        assert_eq!(s.k(), 0);
        assert_eq!(s.report.ell, 0);
        assert_eq!(s.report.delta, BigInt::from(1));
    }

    #[test]
    fn square_matrix_stays_below_the_box_factor() {
        let a = IntMatrix::from_i64(&[[3, 1, 0], [1, 4, 2], [0, 1, 5]]).unwrap();
        for mode in [SynthMode::Part1, SynthMode::Part2] {
            let s = synthesize(&a, mode).unwrap();
            assert_eq!(s.report.r, 0);
            assert!((s.k() as f64) <= s.report.box_factor * (1.0 + 1e-9));
        }
    }

    #[test]
    fn worked_example_both_routes() {
        let a = worked_example();
        let one = synthesize(&a, SynthMode::Part1).unwrap();
        let two = synthesize(&a, SynthMode::Part2).unwrap();
        for s in [&one, &two] {
            assert!(s.report.holds());
            assert_eq!(s.report.delta_a, BigInt::from(5));
            assert!(is_tu(&s.w_hnf, TuMethod::Exhaustive).unwrap().is_tu);
            assert!(check_block_structure(s.factorization.as_ref().unwrap()));
            assert!(s.certificate.check_witnesses(&s.hnf.h));
        }
        let best = synthesize(&a, SynthMode::Best).unwrap();
        assert_eq!(best.k(), one.k().min(two.k()));
    }

    #[test]
    fn second_route_controls_distinct_columns() {
        let a = worked_example();
        let s = synthesize(&a, SynthMode::Part2).unwrap();
        let g = s.group.unwrap();
        let cols = distinct_columns(&g.ey).0;
        assert!(BigUint::from(cols) <= s.report.c_a);
    }

    #[test]
    fn original_coordinates() {
        let a = worked_example();
        let s = synthesize(&a, SynthMode::Best).unwrap();
        assert_eq!(&s.w * &s.hnf.u, s.w_hnf);
        let rows = s.original_c_rows();
        assert_eq!(rows.len(), a.rows() - (a.cols() - s.report.ell));
    }

    #[test]
    fn rank_deficient_rejected() {
        let a = IntMatrix::from_i64(&[[1, 2], [2, 4]]).unwrap();
        assert!(matches!(synthesize(&a, SynthMode::Best), Err(Error::RankDeficient { .. })));
    }
}
