use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{ceil_sqrt, Assignment, Cover, Point, PointSet};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// `B = C`, `T` empty.
pub fn cover_trivial(c: &PointSet) -> Result<Cover> {
    if c.is_empty() {
        return Err(Error::EmptyInput("cannot cover an empty point set"));
    }
    let assignment = (0..c.len()).map(|i| Assignment { b: i, t: None }).collect();
    Ok(Cover::from_raw(c.clone(), PointSet::new(c.dim()), c.clone(), assignment))
}

/// The box `{0..alpha_1-1} x ... x {0..alpha_l-1}` in lexicographic order.
pub fn psi(alphas: &[u64]) -> PointSet {
    let pts = alphas
        .iter()
        .map(|&a| 0..a)
        .multi_cartesian_product()
        .map(|p| p.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect());
    if alphas.is_empty() {
        return PointSet::from_points(0, [Vec::new()]).expect("dimension 0");
    }
    PointSet::from_points(alphas.len(), pts).expect("uniform dimension")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KCase {
    /// The largest alpha is at least the square root of the product.
    Case1,
    Case2,
}

/// Box sizes for the box-and-translates cover, computed on the alphas in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KChoice {
    /// Ascending.
    pub alphas: Vec<u64>,
    pub k: Vec<u64>,
    /// `beta_i = (alpha_i - 1) / (k_i + 1)`, rounded down.
    pub betas: Vec<u64>,
    pub case: KCase,
    /// `alphas[i]` is entry `order[i]` of the input.
    pub order: Vec<usize>,
}

impl KChoice {
    pub fn delta(&self) -> u128 {
        self.alphas.iter().map(|&a| a as u128).product()
    }

    /// `|B| + |T|` of the cover built from this choice: the box, the columns
    /// of the triangular block and the nonzero translations.
    pub fn cover_cost(&self) -> u128 {
        let boxed: u128 = self.k.iter().map(|&k| k as u128 + 1).product();
        let trans: u128 = self.betas.iter().map(|&b| b as u128 + 1).product();
        boxed + self.alphas.len() as u128 + trans - 1
    }

    fn unsort(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; v.len()];
        for (i, &o) in self.order.iter().enumerate() {
            out[o] = v[i];
        }
        out
    }

    pub fn k_in_input_order(&self) -> Vec<u64> {
        self.unsort(&self.k)
    }

    pub fn alphas_in_input_order(&self) -> Vec<u64> {
        self.unsort(&self.alphas)
    }

    pub fn betas_in_input_order(&self) -> Vec<u64> {
        self.unsort(&self.betas)
    }
}

/// `4 sqrt(delta) + log2(delta)`.
pub fn box_cover_bound(delta: u128) -> f64 {
    let d = delta as f64;
    4.0 * d.sqrt() + d.log2()
}

/// `cost <= 4 sqrt(delta) + log2(delta)` up to a relative slack of `1e-9`.
pub fn within_box_cover_bound(cost: u128, delta: u128) -> bool {
    let bound = box_cover_bound(delta);
    cost as f64 <= bound * (1.0 + 1e-9)
}

/// Smallest `k` with `k^2 * delta >= x^2`, i.e. `ceil(x / sqrt(delta))`.
fn ceil_ratio_sqrt(x: u128, delta: u128) -> u128 {
    ceil_sqrt((x * x).div_ceil(delta))
}

/// Chooses box sizes so that the box-and-translates cover of the triangular
/// block costs at most `4 sqrt(delta) + log2(delta)`. The real exponents of
/// the construction are handled with exact integer comparisons, and the
/// resulting cost is checked against the bound before returning.
///
/// ```
/// use integrality::covering::{choose_k, KCase};
///
/// let c = choose_k(&[2, 2]).unwrap();
/// assert_eq!(c.case, KCase::Case1);
/// assert_eq!(c.k, vec![1, 1]);
/// assert_eq!(c.cover_cost(), 6);
/// ```
pub fn choose_k(alphas: &[u64]) -> Result<KChoice> {
    if alphas.is_empty() {
        return Err(Error::EmptyInput("choose_k needs at least one alpha"));
    }
    if let Some(a) = alphas.iter().find(|&&a| a < 2) {
        return Err(Error::Precondition(format!("alpha {a} is smaller than 2")));
    }
    let delta = alphas
        .iter()
        .try_fold(1u128, |acc, &a| acc.checked_mul(a as u128).filter(|&d| d <= u64::MAX as u128))
        .ok_or_else(|| Error::Precondition("product of alphas does not fit in 64 bits".into()))?;

    let mut order: Vec<usize> = (0..alphas.len()).collect();
    order.sort_by_key(|&i| (alphas[i], i));
    let sorted: Vec<u64> = order.iter().map(|&i| alphas[i]).collect();
    let l = sorted.len();
    let last = sorted[l - 1] as u128;

    let mut k: Vec<u128> = sorted.iter().map(|&a| a as u128 - 1).collect();
    let case = if last * last >= delta {
        k[l - 1] = ceil_ratio_sqrt(last, delta);
        KCase::Case1
    } else {
        if l <= 2 {
            return Err(Error::Consistency(format!(
                "second case reached with only {l} alphas"
            )));
        }
        let mut gamma: u128 = 1;
        let mut j = 0;
        while j < l && (gamma * sorted[j] as u128).pow(2) <= delta {
            gamma *= sorted[j] as u128;
            j += 1;
        }
        if j == 0 || j >= l - 1 {
            return Err(Error::Consistency(format!("prefix index {j} out of range")));
        }
        for x in k.iter_mut().take(j) {
            *x = 0;
        }
        k[j] = ceil_ratio_sqrt(sorted[j] as u128 * gamma, delta);
        KCase::Case2
    };

    let k: Vec<u64> = k
        .iter()
        .zip(&sorted)
        .map(|(&x, &a)| x.min(a as u128 - 1) as u64)
        .collect();
    let betas = k.iter().zip(&sorted).map(|(&k, &a)| (a - 1) / (k + 1)).collect();
    let choice = KChoice {
        alphas: sorted,
        k,
        betas,
        case,
        order,
    };
    let cost = choice.cover_cost();
    if !within_box_cover_bound(cost, delta) {
        return Err(Error::Consistency(format!(
            "box cover cost {cost} exceeds the bound {} for delta {delta}",
            box_cover_bound(delta)
        )));
    }
    Ok(choice)
}

/// Entries of a valid triangular block: square, lower triangular, diagonal at
/// least 2, entries left of the diagonal in `[0, alpha_i - 1]`.
fn lambda_entries(lambda: &IntMatrix) -> Result<Vec<Vec<u64>>> {
    if !lambda.is_square() {
        return Err(Error::Shape("triangular block must be square".into()));
    }
    let l = lambda.rows();
    let mut out = vec![vec![0u64; l]; l];
    for i in 0..l {
        let a = &lambda[(i, i)];
        if a < &BigInt::from(2) {
            return Err(Error::Shape(format!("diagonal entry {i} is {a}, expected at least 2")));
        }
        for j in 0..l {
            let x = &lambda[(i, j)];
            if j > i && !x.is_zero() {
                return Err(Error::Shape(format!("nonzero entry above the diagonal at ({i},{j})")));
            }
            if j < i && (x.is_negative() || x >= a) {
                return Err(Error::Shape(format!("entry ({i},{j}) = {x} is not reduced")));
            }
            out[i][j] = x
                .to_u64()
                .ok_or_else(|| Error::Shape(format!("entry ({i},{j}) is too large")))?;
        }
    }
    Ok(out)
}

fn to_point(v: &[u64]) -> Point {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Mixed-radix rank of `digits` with the first coordinate most significant.
fn radix_index(digits: &[u64], radices: &[u64]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0usize, |acc, (&d, &r)| acc * r as usize + d as usize)
}

/// Box-and-translates cover of `Psi(Lambda)` together with the columns of
/// `Lambda`, for a choice made by [`choose_k`] on the diagonal of `Lambda`.
pub fn cover_box(lambda: &IntMatrix, choice: &KChoice) -> Result<Cover> {
    let diag: Vec<BigInt> = (0..lambda.rows().min(lambda.cols())).map(|i| lambda[(i, i)].clone()).collect();
    let expect: Vec<BigInt> = choice.alphas_in_input_order().into_iter().map(BigInt::from).collect();
    if diag != expect {
        return Err(Error::Shape("box sizes were chosen for a different diagonal".into()));
    }
    cover_box_raw(lambda, &choice.k_in_input_order())
}

/// Box-and-translates cover with explicit box sizes `k` in the coordinate
/// order of `Lambda`.
///
/// `B` is the box `{0..k_1} x ... x {0..k_l}` followed by the columns of
/// `Lambda`; `T` holds the nonzero vectors whose `i`-th entry is a multiple of
/// `k_i + 1` no larger than `beta_i (k_i + 1)`.
pub fn cover_box_raw(lambda: &IntMatrix, k: &[u64]) -> Result<Cover> {
    let entries = lambda_entries(lambda)?;
    let l = entries.len();
    if k.len() != l {
        return Err(Error::Shape(format!("{} box sizes for a block of size {l}", k.len())));
    }
    let alphas: Vec<u64> = (0..l).map(|i| entries[i][i]).collect();
    for i in 0..l {
        if k[i] >= alphas[i] {
            return Err(Error::Precondition(format!(
                "box size k_{i} = {} is not below alpha_{i} = {}",
                k[i], alphas[i]
            )));
        }
    }
    if l == 0 {
        let origin = PointSet::from_points(0, [Vec::new()])?;
        let a = vec![Assignment { b: 0, t: None }];
        return Ok(Cover::from_raw(origin.clone(), PointSet::new(0), origin, a));
    }
    let steps: Vec<u64> = k.iter().map(|&x| x + 1).collect();
    let betas: Vec<u64> = (0..l).map(|i| (alphas[i] - 1) / steps[i]).collect();
    let t_radix: Vec<u64> = betas.iter().map(|&b| b + 1).collect();

    let mut b = PointSet::from_points(l, k.iter().map(|&x| 0..=x).multi_cartesian_product().map(|v| to_point(&v)))?;
    let box_len = b.len();
    let columns: Vec<Vec<u64>> = (0..l).map(|j| (0..l).map(|i| entries[i][j]).collect()).collect();
    for c in &columns {
        b.insert(to_point(c))?;
    }
    let t = PointSet::from_points(
        l,
        t_radix
            .iter()
            .map(|&r| 0..r)
            .multi_cartesian_product()
            .skip(1)
            .map(|q| to_point(&q.iter().zip(&steps).map(|(a, s)| a * s).collect::<Vec<_>>())),
    )?;

    let split = |z: &[u64]| -> Option<Assignment> {
        let v: Vec<u64> = z.iter().zip(&steps).map(|(x, s)| x % s).collect();
        let q: Vec<u64> = z.iter().zip(&steps).map(|(x, s)| x / s).collect();
        if q.iter().zip(&betas).any(|(a, b)| a > b) {
            return None;
        }
        let ti = radix_index(&q, &t_radix);
        Some(Assignment {
            b: radix_index(&v, &steps),
            t: (ti > 0).then(|| ti - 1),
        })
    };

    let mut covered = psi(&alphas);
    let mut assignment = Vec::with_capacity(covered.len() + l);
    for z in alphas.iter().map(|&a| 0..a).multi_cartesian_product() {
        assignment.push(split(&z).ok_or_else(|| Error::Consistency("box point outside the translates".into()))?);
    }
    for (j, c) in columns.iter().enumerate() {
        covered.insert(to_point(c))?;
        assignment.push(split(c).unwrap_or(Assignment { b: box_len + j, t: None }));
    }
    Ok(Cover::from_raw(b, t, covered, assignment))
}

/// Cartesian product of two covers. `B` is ordered with the first factor
/// major; `T` runs over pairs `(t1 or 0, t2 or 0)` other than `(0, 0)` in the
/// same order.
pub fn cover_product(c1: &Cover, c2: &Cover) -> Cover {
    let (d1, d2) = (c1.dim(), c2.dim());
    let join = |x: &Point, y: &Point| -> Point { x.iter().chain(y).cloned().collect() };
    let zero1: Point = vec![BigRational::default(); d1];
    let zero2: Point = vec![BigRational::default(); d2];

    let mut b = PointSet::new(d1 + d2);
    for x in c1.b().iter() {
        for y in c2.b().iter() {
            b.insert(join(x, y)).expect("dimension");
        }
    }
    let opt = |s: &PointSet, zero: &Point| -> Vec<Point> {
        std::iter::once(zero.clone()).chain(s.iter().cloned()).collect()
    };
    let (t1, t2) = (opt(c1.t(), &zero1), opt(c2.t(), &zero2));
    let mut t = PointSet::new(d1 + d2);
    for (i, x) in t1.iter().enumerate() {
        for (j, y) in t2.iter().enumerate() {
            if i == 0 && j == 0 {
                continue;
            }
            t.insert(join(x, y)).expect("dimension");
        }
    }

    let nb2 = c2.b().len();
    let nt2 = t2.len();
    let mut covered = PointSet::new(d1 + d2);
    let mut assignment = Vec::with_capacity(c1.covered().len() * c2.covered().len());
    for (x, a1) in c1.covered().iter().zip(c1.assignment()) {
        for (y, a2) in c2.covered().iter().zip(c2.assignment()) {
            covered.insert(join(x, y)).expect("dimension");
            let j1 = a1.t.map_or(0, |v| v + 1);
            let j2 = a2.t.map_or(0, |v| v + 1);
            let tj = j1 * nt2 + j2;
            assignment.push(Assignment {
                b: a1.b * nb2 + a2.b,
                t: (tj > 0).then(|| tj - 1),
            });
        }
    }
    Cover::from_raw(b, t, covered, assignment)
}
