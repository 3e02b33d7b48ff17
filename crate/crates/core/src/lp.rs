//! A small exact simplex solver (two-phase, Bland's rule) for the cone
//! membership and index problems. Problem sizes are tiny, so a dense
//! tableau over `BigRational` is plenty.

use num_traits::{Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    obj: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &piv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over the allowed columns. Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
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
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let total = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r = vec![Rat::zero(); total + 1];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v.clone() } else { v.clone() };
        }
        r[n + i] = Rat::from_integer(1.into());
        r[total] = if flip { -bi.clone() } else { bi.clone() };
        rows.push(r);
    }
    // phase 1: maximize -sum(artificials)
    let mut obj = vec![Rat::zero(); total + 1];
    for j in n..total {
        obj[j] = Rat::from_integer(1.into());
    }
    for r in &rows {
        for (o, v) in obj.iter_mut().zip(r) {
            *o -= v;
        }
    }
    let mut t = Tableau { rows, obj, basis: (n..total).collect() };
    t.optimize(total);
    if !t.obj[total].is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    // phase 2
    let mut obj = vec![Rat::zero(); total + 1];
    for (j, cj) in c.iter().enumerate() {
        obj[j] = -cj.clone();
    }
    for (r, &bj) in t.rows.iter().zip(&t.basis) {
        if bj < n && !c[bj].is_zero() {
            for (o, v) in obj.iter_mut().zip(r) {
                *o += &c[bj] * v;
            }
        }
    }
    t.obj = obj;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &bj) in t.rows.iter().zip(&t.basis) {
        if bj < n {
            x[bj] = r[total].clone();
        }
    }
    LpOutcome::Optimal { value: t.obj[total].clone(), x }
}
