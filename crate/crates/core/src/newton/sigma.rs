use num_traits::{One, Signed, Zero};

use super::{check_dim, dd, Face};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{self, Rat};

/// `Σ = {x ∈ R₊^n : ⟨β,x⟩ ≥ 1 for all β ∈ I}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspacePolyhedron {
    n: usize,
    betas: Vec<Vec<Rat>>,
    vertices: Vec<Vec<Rat>>,
}

impl HalfspacePolyhedron {
    pub fn new(betas: &[Vec<Rat>]) -> Result<Self> {
        let n = betas.first().ok_or_else(|| Error::Invalid("empty direction set".into()))?.len();
        check_dim(n)?;
        for b in betas {
            if b.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: b.len() });
            }
            if b.iter().any(Signed::is_negative) || rat::is_zero_vec(b) {
                return Err(Error::Invalid("directions must lie in Q₊^n \\ {0}".into()));
            }
        }
        let mut betas = betas.to_vec();
        betas.sort();
        betas.dedup();
        // cone over Σ in (x0, x): x0 ≥ 0, x ≥ 0, ⟨β,x⟩ − x0 ≥ 0
        let mut rows: Vec<Vec<Rat>> = (0..=n).map(|i| rat::unit_vec(n + 1, i)).collect();
        for b in &betas {
            rows.push(std::iter::once(-Rat::one()).chain(b.iter().cloned()).collect());
        }
        let rays = dd::extreme_rays(&rows).expect("orthant rows have full rank");
        let mut vertices: Vec<Vec<Rat>> = rays
            .into_iter()
            .filter(|r| r.dir[0].is_positive())
            .map(|r| r.dir[1..].iter().map(|x| x / &r.dir[0]).collect())
            .collect();
        vertices.sort();
        vertices.dedup();
        Ok(Self { n, betas, vertices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directions(&self) -> &[Vec<Rat>] {
        &self.betas
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.iter().all(|v| !v.is_negative()) && self.betas.iter().all(|b| rat::dot(b, x) >= Rat::one())
    }

    /// `F(Σ)(a)`: the face where `⟨a,·⟩` attains its minimum over `Σ`.
    pub fn first_meet_locus(&self, a: &[Rat]) -> Result<Face> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: a.len() });
        }
        if a.iter().any(Signed::is_negative) || rat::is_zero_vec(a) {
            return Err(Error::Invalid("polar witness must lie in R₊^n \\ {0}".into()));
        }
        let value = self.vertices.iter().map(|v| rat::dot(a, v)).min().expect("Σ has a vertex");
        let active: Vec<Vec<Rat>> = self.vertices.iter().filter(|v| rat::dot(a, v) == value).cloned().collect();
        let recession: Vec<usize> = (0..self.n).filter(|&i| a[i].is_zero()).collect();
        let v0 = &active[0];
        let mut span: Vec<Vec<Rat>> = active[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(x, y)| x - y).collect())
            .collect();
        span.extend(recession.iter().map(|&i| rat::unit_vec(self.n, i)));
        let dim = linalg::rank(&span);
        Ok(Face { witness: a.to_vec(), value, active, recession, dim, codim: self.n - dim })
    }

    /// `ι(Σ) = min |x|` over `Σ` and the face `F(Σ)(1)` where it is attained.
    pub fn index(&self) -> (Rat, Face) {
        let face = self.first_meet_locus(&rat::ones(self.n)).expect("1 is a valid witness");
        (face.value.clone(), face)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    // oracle: intersect every n-subset of the hyperplanes {⟨β,x⟩ = 1} ∪ {x_i = 0}
    fn subset_vertices(betas: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let n = betas[0].len();
        let mut planes: Vec<(Vec<Rat>, Rat)> = betas.iter().map(|b| (b.clone(), int(1))).collect();
        planes.extend((0..n).map(|i| (rat::unit_vec(n, i), int(0))));
        let m = planes.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != n {
                continue;
            }
            let chosen: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let a: Vec<Vec<Rat>> = chosen.iter().map(|&i| planes[i].0.clone()).collect();
            let b: Vec<Rat> = chosen.iter().map(|&i| planes[i].1.clone()).collect();
            if linalg::rank(&a) < n {
                continue;
            }
            let x = linalg::solve(&a, &b).unwrap();
            let feasible =
                x.iter().all(|c| !c.is_negative()) && betas.iter().all(|b| rat::dot(b, &x) >= int(1));
            if feasible {
                out.push(x);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn vertices_match_subset_oracle() {
        let cases = vec![
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![v(&[1, 1])],
            vec![v(&[2, 0]), v(&[0, 1])],
            vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])],
            vec![v(&[3, 1]), v(&[1, 3]), v(&[1, 1])],
            vec![v(&[1, 2, 0]), v(&[0, 1, 1]), v(&[2, 0, 1]), v(&[1, 1, 1])],
            vec![vec![frac(1, 2), int(1), int(0)], v(&[0, 0, 3]), v(&[1, 1, 1])],
        ];
        for betas in cases {
            let s = HalfspacePolyhedron::new(&betas).unwrap();
            assert_eq!(s.vertices(), subset_vertices(&betas).as_slice(), "{betas:?}");
        }
    }

    #[test]
    fn orthant_corner() {
        let s = HalfspacePolyhedron::new(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let f = s.first_meet_locus(&v(&[1, 1])).unwrap();
        assert_eq!(f.value, int(2));
        assert_eq!(f.active, vec![v(&[1, 1])]);
        assert_eq!((f.dim, f.codim), (0, 2));
        let f = s.first_meet_locus(&v(&[1, 0])).unwrap();
        assert_eq!(f.value, int(1));
        assert_eq!(f.recession, vec![1]);
        assert_eq!(f.dim, 1);
    }

    #[test]
    fn single_halfspace() {
        let s = HalfspacePolyhedron::new(&[v(&[1, 1])]).unwrap();
        let f = s.first_meet_locus(&v(&[1, 1])).unwrap();
        assert_eq!(f.value, int(1));
        assert_eq!(f.active, vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(f.dim, 1);
        assert_eq!(s.index().0, int(1));
    }

    #[test]
    fn index_examples() {
        let s = HalfspacePolyhedron::new(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let (iota, face) = s.index();
        assert_eq!(iota, int(3));
        assert_eq!(face.active, vec![v(&[1, 1, 1])]);
        let s = HalfspacePolyhedron::new(&[v(&[2, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(s.index().0, frac(3, 2));
    }

    #[test]
    fn rejects_bad_directions() {
        assert!(HalfspacePolyhedron::new(&[v(&[0, 0])]).is_err());
        assert!(HalfspacePolyhedron::new(&[v(&[1, -1])]).is_err());
        assert!(HalfspacePolyhedron::new(&[]).is_err());
    }
}
