//! Double description: extreme rays of `{y : ⟨a_i, y⟩ ≥ 0}`.

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn contains(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

/// An extreme ray with the indices of the constraints it satisfies with equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    pub dir: Vec<Rat>,
    pub tight: Vec<usize>,
}

/// Extreme rays of the cone `{y ∈ Q^d : ⟨a_i, y⟩ ≥ 0 ∀i}`, each scaled to a
/// primitive integer vector. Returns `None` when the rows have rank `< d`
/// (the cone then contains a line and has no extreme rays).
pub fn extreme_rays(rows: &[Vec<Rat>]) -> Option<Vec<Ray>> {
    let d = rows.first()?.len();
    let m = rows.len();
    // greedy choice of d independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut basis_rows: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        basis_rows.push(r.clone());
        if linalg::rank(&basis_rows) == basis_rows.len() {
            basis.push(i);
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < d {
        return None;
    }
    // initial simplicial cone: columns of the inverse basis matrix
    let mut rays: Vec<(Vec<Rat>, Bits)> = Vec::with_capacity(d);
    for j in 0..d {
        let dir = linalg::solve(&basis_rows, &rat::unit_vec(d, j)).expect("basis is invertible");
        let mut z = Bits::new(m);
        for (k, &bi) in basis.iter().enumerate() {
            if k != j {
                z.set(bi);
            }
        }
        rays.push((rat::primitive(&dir), z));
    }
    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|(r, _)| rat::dot(row, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, (_, z)) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    z.set(i);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<Rat>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if (common.count() as usize) + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, (_, z))| k != p && k != q && z.contains(&common));
                if blocked {
                    continue;
                }
                let dir: Vec<Rat> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(rq, rp)| &vals[p] * rq - &vals[q] * rp)
                    .collect();
                let mut z = common;
                z.set(i);
                next.push((rat::primitive(&dir), z));
            }
        }
        for (k, (r, mut z)) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                z.set(i);
            }
            next.push((r, z));
        }
        rays = next;
    }
    Some(
        rays.into_iter()
            .map(|(dir, z)| Ray { tight: (0..m).filter(|&i| z.get(i)).collect(), dir })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn sorted_dirs(rays: &[Ray]) -> Vec<Vec<Rat>> {
        let mut d: Vec<_> = rays.iter().map(|r| r.dir.clone()).collect();
        d.sort();
        d
    }

    #[test]
    fn orthant() {
        let rays = extreme_rays(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(sorted_dirs(&rays), vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn square_cone() {
        // homogenized unit square 0 ≤ x, y ≤ 1: four rays (1, corner)
        let rows = [v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, -1, 0]), v(&[1, 0, -1])];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(
            sorted_dirs(&rays),
            vec![v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[1, 1, 0]), v(&[1, 1, 1])]
        );
        for r in &rays {
            for (i, row) in rows.iter().enumerate() {
                let val = rat::dot(row, &r.dir);
                assert!(!val.is_negative());
                assert_eq!(val.is_zero(), r.tight.contains(&i));
            }
        }
    }

    #[test]
    fn redundant_constraints() {
        let rows = [v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 1])];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(sorted_dirs(&rays), vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn not_pointed() {
        assert!(extreme_rays(&[v(&[1, 0])]).is_none());
    }
}
