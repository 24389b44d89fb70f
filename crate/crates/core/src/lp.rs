//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are in standard form: minimize `c·x` subject to `A x = b`,
//! `x >= 0`. Sizes here are tiny, so the tableau is recomputed naively.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<BigRational>,
        value: BigRational,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    /// Runs Bland's-rule iterations over the columns in `allowed`.
    /// Returns false when the objective is unbounded below.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= &cost[b] * &self.rows[i][j];
                }
                r.is_negative()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

pub fn minimize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let nvars = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length");
    let total = nvars + m;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), nvars, "constraint row length");
        let flip = bi.is_negative();
        let mut r: Vec<BigRational> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| {
            if k == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        }));
        rows.push(r);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (nvars..total).collect(),
    };

    let phase_one: Vec<BigRational> = (0..total)
        .map(|j| {
            if j >= nvars {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        })
        .collect();
    t.optimize(&phase_one, total);
    let infeasibility: BigRational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bv, _)| bv >= nvars)
        .map(|(_, r)| r.clone())
        .fold(BigRational::zero(), |acc, r| acc + r);
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // drive remaining artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nvars {
            if let Some(col) = (0..nvars).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
                i += 1;
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut cost = c.to_vec();
    cost.resize(total, BigRational::zero());
    if !t.optimize(&cost, nvars) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < nvars {
            x[bv] = t.rhs[i].clone();
        }
    }
    let value = x
        .iter()
        .zip(c)
        .fold(BigRational::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { x, value }
}

/// Any feasible point of `A x = b, x >= 0`.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let nvars = a.first().map_or(0, |r| r.len());
    match minimize(&vec![BigRational::zero(); nvars], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
