//! Exact minimum-cost covers over a finite candidate grid.
//!
//! Costs are tried in increasing order. For a cost `K` and a translation set
//! `T` of size `t`, the best `B` is a minimum hitting set: every point `c`
//! needs some `b` in `({c} ∪ (c - T)) ∩ grid`. Translation sets are enumerated
//! as combinations of grid points, and hitting sets by a small branch and
//! bound over bitmasks.

use itertools::Itertools;
use rayon::prelude::*;

use super::{ceil_sqrt, sub_points, Cover, PointSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceCaps {
    pub max_points: usize,
    pub max_grid: usize,
}

impl Default for BruteForceCaps {
    fn default() -> Self {
        BruteForceCaps {
            max_points: 25,
            max_grid: 60,
        }
    }
}

/// Hard limit from the bitmask representation.
const MASK_BITS: usize = 64;

/// `C ∪ (C - C)`, with `C` first.
pub fn default_grid(c: &PointSet) -> PointSet {
    let mut g = c.clone();
    for x in c.iter() {
        for y in c.iter() {
            g.insert(sub_points(x, y)).expect("same dimension");
        }
    }
    g
}

struct Search {
    n: usize,
    /// `self_idx[c]`: grid index of point `c`, if it is on the grid.
    self_idx: Vec<Option<usize>>,
    /// `shift[t][c]`: grid index of `c - grid[t_cands[t]]`.
    shift: Vec<Vec<Option<usize>>>,
    grid_len: usize,
}

impl Search {
    /// Masks of covered points for each grid point usable as a `b`, given `T`.
    fn coverage(&self, ts: &[usize]) -> Vec<(usize, u64)> {
        let mut cov = vec![0u64; self.grid_len];
        for c in 0..self.n {
            if let Some(g) = self.self_idx[c] {
                cov[g] |= 1 << c;
            }
            for &t in ts {
                if let Some(g) = self.shift[t][c] {
                    cov[g] |= 1 << c;
                }
            }
        }
        cov.into_iter()
            .enumerate()
            .filter(|&(_, m)| m != 0)
            .collect()
    }

    fn hitting_set(&self, ts: &[usize], budget: usize) -> Option<Vec<usize>> {
        let cov = self.coverage(ts);
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let union = cov.iter().fold(0, |acc, &(_, m)| acc | m);
        if union != full {
            return None;
        }
        let best = cov.iter().map(|&(_, m)| m.count_ones()).max().unwrap_or(0) as usize;
        let mut chosen = Vec::new();
        if dfs(&cov, full, budget, best, &mut chosen) {
            chosen.sort_unstable();
            Some(chosen)
        } else {
            None
        }
    }
}

fn dfs(cov: &[(usize, u64)], uncovered: u64, budget: usize, best: usize, chosen: &mut Vec<usize>) -> bool {
    if uncovered == 0 {
        return true;
    }
    if budget == 0 || uncovered.count_ones() as usize > budget * best {
        return false;
    }
    // branch on the uncovered point with the fewest options
    let mut pick = None;
    let mut fewest = usize::MAX;
    let mut rest = uncovered;
    while rest != 0 {
        let c = rest.trailing_zeros();
        rest &= rest - 1;
        let count = cov.iter().filter(|&&(_, m)| m >> c & 1 == 1).count();
        if count < fewest {
            fewest = count;
            pick = Some(c);
        }
    }
    let c = pick.expect("nonempty");
    for &(g, m) in cov.iter().filter(|&&(_, m)| m >> c & 1 == 1) {
        chosen.push(g);
        if dfs(cov, uncovered & !m, budget - 1, best, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Minimum-cost cover of `c` with `B` and `T` drawn from `grid` (by default
/// `C ∪ (C - C)`). Optimal under that restriction.
pub fn cover_optimal_bruteforce(c: &PointSet, grid: Option<&PointSet>, caps: BruteForceCaps) -> Result<Cover> {
    if c.is_empty() {
        return Err(Error::EmptyInput("cannot cover an empty point set"));
    }
    let n = c.len();
    if n > caps.max_points || n > MASK_BITS {
        return Err(Error::cap("points to cover", n as u128, caps.max_points.min(MASK_BITS) as u128));
    }
    let owned;
    let grid = match grid {
        Some(g) => {
            if g.dim() != c.dim() {
                return Err(Error::Dimension("grid and point set differ in dimension".into()));
            }
            g
        }
        None => {
            owned = default_grid(c);
            &owned
        }
    };
    if grid.len() > caps.max_grid {
        return Err(Error::cap("candidate grid points", grid.len() as u128, caps.max_grid as u128));
    }

    let t_cands: Vec<usize> = (0..grid.len())
        .filter(|&g| grid.get(g).iter().any(|x| x != &Default::default()))
        .collect();
    let shift: Vec<Vec<Option<usize>>> = t_cands
        .iter()
        .map(|&t| c.iter().map(|p| grid.position(&sub_points(p, grid.get(t)))).collect())
        .collect();
    // translations that never produce a grid point are useless
    let useful: Vec<usize> = (0..t_cands.len()).filter(|&i| shift[i].iter().any(Option::is_some)).collect();
    let search = Search {
        n,
        self_idx: c.iter().map(|p| grid.position(p)).collect(),
        shift,
        grid_len: grid.len(),
    };

    let lower = ceil_sqrt(n as u128) as usize;
    let upper = grid.len() + useful.len();
    for cost in lower.max(1)..=upper {
        for t in 0..cost.min(useful.len() + 1) {
            let s = cost - t;
            if s * (t + 1) < n {
                continue;
            }
            let found = if t == 0 {
                search.hitting_set(&[], s).map(|b| (b, Vec::new()))
            } else {
                (0..useful.len()).into_par_iter().find_map_first(|first| {
                    (first + 1..useful.len()).combinations(t - 1).find_map(|rest| {
                        let ts: Vec<usize> = std::iter::once(useful[first])
                            .chain(rest.into_iter().map(|i| useful[i]))
                            .collect();
                        search.hitting_set(&ts, s).map(|b| (b, ts))
                    })
                })
            };
            if let Some((bs, ts)) = found {
                let b = PointSet::from_points(c.dim(), bs.iter().map(|&g| grid.get(g).clone()))?;
                let tset = PointSet::from_points(c.dim(), ts.iter().map(|&i| grid.get(t_cands[i]).clone()))?;
                let cover = Cover::from_parts(b, tset, c.clone())?;
                return cover.restrict(c);
            }
        }
    }
    Err(Error::InvalidCover("no cover exists on the candidate grid".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{int_point, verify_cover};

    fn line(n: i64) -> PointSet {
        PointSet::from_points(1, (0..n).map(|x| int_point(&[x]))).unwrap()
    }

    #[test]
    fn single_point() {
        let c = PointSet::from_points(2, [int_point(&[3, 4])]).unwrap();
        let cov = cover_optimal_bruteforce(&c, None, BruteForceCaps::default()).unwrap();
        assert_eq!(cov.cost(), 1);
    }

    #[test]
    fn four_points_on_a_line() {
        let c = line(4);
        let cov = cover_optimal_bruteforce(&c, None, BruteForceCaps::default()).unwrap();
        assert!(verify_cover(&c, &cov));
        assert_eq!(cov.cost(), 3);
    }

    #[test]
    fn nine_points_on_a_line() {
        let c = line(9);
        let cov = cover_optimal_bruteforce(&c, None, BruteForceCaps::default()).unwrap();
        assert!(verify_cover(&c, &cov));
        assert!(cov.cost() >= 3 && cov.cost() <= 6);
    }

    #[test]
    fn caps_are_enforced() {
        let c = line(30);
        assert!(matches!(
            cover_optimal_bruteforce(&c, None, BruteForceCaps::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let c = line(7);
        let a = cover_optimal_bruteforce(&c, None, BruteForceCaps::default()).unwrap();
        let b = cover_optimal_bruteforce(&c, None, BruteForceCaps::default()).unwrap();
        assert_eq!(a, b);
    }
}
