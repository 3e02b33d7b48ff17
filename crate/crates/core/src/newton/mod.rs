//! Exact convex geometry over the rationals: Newton polyhedra at infinity,
//! halfspace polyhedra `Σ`, faces, polar cones and indices.

pub mod dd;
mod sigma;
pub mod volume;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::rat::{self, Rat};

pub use sigma::HalfspacePolyhedron;

/// Largest ambient dimension handled by the exact hull code.
pub const MAX_DIM: usize = 8;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("dimension must be ≥ 1".into()));
    }
    if n > MAX_DIM {
        return Err(Error::DimensionBudget { dim: n, max: MAX_DIM });
    }
    Ok(())
}

/// A face described by a linear functional and the points attaining its extremum.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// polar witness `a`
    pub witness: Vec<Rat>,
    /// extremal value of `⟨a,·⟩` (the minimum on `Σ`, the maximum on `E^∞`)
    pub value: Rat,
    /// vertices or generators attaining the value
    pub active: Vec<Vec<Rat>>,
    /// coordinate directions `i` with `F ± R₊e_i ⊂ F` (the sign follows the polyhedron)
    pub recession: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
}

impl Face {
    pub fn is_compact(&self) -> bool {
        self.recession.is_empty()
    }
}

/// A facet `⟨a,x⟩ ≤ m` of `E^∞(P)`; `a` is a primitive integer vector `≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub offset: Rat,
    /// indices into the generator list
    pub active: Vec<usize>,
}

impl Facet {
    /// `λ = a/m` with `⟨λ,x⟩ ≤ 1` on `E^∞`, when `m > 0`.
    pub fn polar(&self) -> Option<Vec<Rat>> {
        self.offset
            .is_positive()
            .then(|| self.normal.iter().map(|a| a / &self.offset).collect())
    }
}

/// `E^∞(P) = conv(supp P) − R₊^n` in both representations.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedronAtInfinity {
    n: usize,
    generators: Vec<Vec<Rat>>,
    vertices: Vec<Vec<Rat>>,
    facets: Vec<Facet>,
}

/// Facets `y0 + ⟨y',x⟩ ≥ 0` of `conv(points) + cone(dirs)`, computed from the
/// homogenized generators `(1,p)` and `(0,d)`. The face at infinity is dropped.
pub(crate) fn homogenized_facets(points: &[Vec<Rat>], dirs: &[Vec<Rat>]) -> Option<Vec<(Rat, Vec<Rat>)>> {
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| std::iter::once(Rat::one()).chain(p.iter().cloned()).collect())
        .chain(dirs.iter().map(|d| std::iter::once(Rat::zero()).chain(d.iter().cloned()).collect()))
        .collect();
    let rays = dd::extreme_rays(&rows)?;
    Some(
        rays.into_iter()
            .filter(|r| !rat::is_zero_vec(&r.dir[1..]))
            .map(|r| (r.dir[0].clone(), r.dir[1..].to_vec()))
            .collect(),
    )
}

impl PolyhedronAtInfinity {
    pub fn new(points: &[Vec<Rat>]) -> Result<Self> {
        let n = points.first().ok_or_else(|| Error::Invalid("no generators".into()))?.len();
        check_dim(n)?;
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: 0 });
        }
        if points.iter().flatten().any(Signed::is_negative) {
            return Err(Error::Invalid("generators must lie in the closed orthant".into()));
        }
        let mut generators = points.to_vec();
        generators.sort();
        generators.dedup();
        let dirs: Vec<Vec<Rat>> = (0..n).map(|j| rat::unit_vec(n, j).into_iter().map(|x| -x).collect()).collect();
        let raw = homogenized_facets(&generators, &dirs).expect("recession directions span R^n");
        let mut facets: Vec<Facet> = raw
            .into_iter()
            .map(|(y0, y)| {
                let normal: Vec<Rat> = y.into_iter().map(|v| -v).collect();
                let active = (0..generators.len())
                    .filter(|&g| rat::dot(&normal, &generators[g]) == y0)
                    .collect();
                Facet { normal, offset: y0, active }
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal).then_with(|| a.offset.cmp(&b.offset)));
        let vertices = generators
            .iter()
            .filter(|g| {
                let tight: Vec<Vec<Rat>> = facets
                    .iter()
                    .filter(|f| rat::dot(&f.normal, g) == f.offset)
                    .map(|f| f.normal.clone())
                    .collect();
                linalg::rank(&tight) == n
            })
            .cloned()
            .collect();
        Ok(Self { n, generators, vertices, facets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| rat::dot(&f.normal, x) <= f.offset)
    }

    /// The smallest face meeting the diagonal, `σ0` and `ρ0 = codim G0`.
    pub fn diagonal_face(&self) -> Result<DiagonalFace> {
        let n = self.n;
        if self.facets.iter().any(|f| f.offset.is_zero()) {
            return Err(Error::Invalid("the diagonal meets E^∞ only at the origin".into()));
        }
        // t·1 ∈ E iff t·|λ_f| ≤ 1 for every facet
        let t_of = |f: &Facet| &f.offset / rat::l1(&f.normal);
        let t_star = self.facets.iter().map(t_of).min().expect("E^∞ has at least one facet");
        let active: Vec<usize> = (0..self.facets.len()).filter(|&i| t_of(&self.facets[i]) == t_star).collect();
        let normals: Vec<Vec<Rat>> = active.iter().map(|&i| self.facets[i].normal.clone()).collect();
        let rho0 = linalg::rank(&normals);
        let point = vec![t_star.clone(); n];
        let mut witness = vec![Rat::zero(); n];
        for &i in &active {
            let lam = self.facets[i].polar().expect("positive offset");
            for (w, l) in witness.iter_mut().zip(lam) {
                *w += l;
            }
        }
        let value = rat::dot(&witness, &point);
        let generators: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .filter(|g| active.iter().all(|&i| rat::dot(&self.facets[i].normal, g) == self.facets[i].offset))
            .cloned()
            .collect();
        let recession = (0..n).filter(|&j| normals.iter().all(|a| a[j].is_zero())).collect();
        let face = Face { witness, value, active: generators, recession, dim: n - rho0, codim: rho0 };
        Ok(DiagonalFace { sigma0: Rat::one() / t_star, rho0, point, facets: active, face })
    }
}

/// Output of [`PolyhedronAtInfinity::diagonal_face`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalFace {
    pub sigma0: Rat,
    pub rho0: usize,
    /// `σ0^{-1}·1`
    pub point: Vec<Rat>,
    /// indices of the facets active at `point`
    pub facets: Vec<usize>,
    pub face: Face,
}

pub fn polyhedron_at_infinity(points: &[Vec<Rat>]) -> Result<PolyhedronAtInfinity> {
    PolyhedronAtInfinity::new(points)
}

pub fn rank_of(set: &[Vec<Rat>]) -> usize {
    linalg::rank(set)
}

/// Decides `v ∈ con(A)` (`open = false`) or `v ∈ con*(A)` (`open = true`) and
/// returns the coefficient certificate `λ` with `Σ λ_k a_k = v`.
pub fn cone_membership(v: &[Rat], generators: &[Vec<Rat>], open: bool) -> Option<Vec<Rat>> {
    let n = v.len();
    let k = generators.len();
    if k == 0 || generators.iter().any(|g| g.len() != n) {
        return None;
    }
    if !open {
        let a: Vec<Vec<Rat>> = (0..n).map(|i| generators.iter().map(|g| g[i].clone()).collect()).collect();
        return match lp::maximize(&a, v, &vec![Rat::zero(); k]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        };
    }
    // λ = μ + t·1 with μ ≥ 0, 0 ≤ t ≤ 1; maximize t
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<Rat> = generators.iter().map(|g| g[i].clone()).collect();
        row.push(generators.iter().map(|g| g[i].clone()).sum());
        row.push(Rat::zero());
        a.push(row);
    }
    let mut cap = vec![Rat::zero(); k];
    cap.push(Rat::one());
    cap.push(Rat::one());
    a.push(cap);
    let mut b = v.to_vec();
    b.push(Rat::one());
    let mut c = vec![Rat::zero(); k + 2];
    c[k] = Rat::one();
    match lp::maximize(&a, &b, &c) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            Some(x[..k].iter().map(|mu| mu + &value).collect())
        }
        _ => None,
    }
}

/// JSON-friendly summary of `E^∞(P)` and its diagonal data.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonSummary {
    pub n: usize,
    pub generators: Vec<Vec<String>>,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetSummary>,
    pub sigma0: String,
    pub rho0: usize,
    pub diagonal_point: Vec<String>,
    pub diagonal_face_dim: usize,
    pub diagonal_face_generators: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetSummary {
    pub normal: Vec<String>,
    pub offset: String,
}

fn render_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat::render).collect()
}

impl PolyhedronAtInfinity {
    pub fn summary(&self) -> Result<NewtonSummary> {
        let df = self.diagonal_face()?;
        Ok(NewtonSummary {
            n: self.n,
            generators: self.generators.iter().map(|g| render_vec(g)).collect(),
            vertices: self.vertices.iter().map(|g| render_vec(g)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| FacetSummary { normal: render_vec(&f.normal), offset: rat::render(&f.offset) })
                .collect(),
            sigma0: rat::render(&df.sigma0),
            rho0: df.rho0,
            diagonal_point: render_vec(&df.point),
            diagonal_face_dim: df.face.dim,
            diagonal_face_generators: df.face.active.iter().map(|g| render_vec(g)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn has_facet(e: &PolyhedronAtInfinity, normal: &[i64], offset: i64) -> bool {
        e.facets().iter().any(|f| f.normal == v(normal) && f.offset == int(offset))
    }

    #[test]
    fn two_pure_powers() {
        let e = polyhedron_at_infinity(&[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert!(has_facet(&e, &[1, 1], 2));
        let f = e.facets().iter().find(|f| f.normal == v(&[1, 1])).unwrap();
        assert_eq!(f.active.len(), 2);
        let df = e.diagonal_face().unwrap();
        assert_eq!(df.sigma0, int(1));
        assert_eq!(df.rho0, 1);
    }

    #[test]
    fn single_point_corner() {
        let e = polyhedron_at_infinity(&[v(&[1, 1])]).unwrap();
        assert_eq!(e.vertices(), &[v(&[1, 1])]);
        assert_eq!(e.facets().len(), 2);
        let df = e.diagonal_face().unwrap();
        assert_eq!(df.sigma0, int(1));
        assert_eq!(df.rho0, 2);
        assert_eq!(df.face.active, vec![v(&[1, 1])]);
        assert_eq!(df.face.dim, 0);
    }

    #[test]
    fn dominated_corner() {
        let e = polyhedron_at_infinity(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(e.vertices(), &[v(&[1, 1])]);
        let mut normals: Vec<_> = e.facets().iter().map(|f| f.normal.clone()).collect();
        normals.sort();
        assert_eq!(normals, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn linear_form() {
        let e = polyhedron_at_infinity(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let df = e.diagonal_face().unwrap();
        assert_eq!(df.sigma0, int(2));
        assert_eq!(df.rho0, 1);
        assert_eq!(df.point, vec![frac(1, 2), frac(1, 2)]);
    }

    #[test]
    fn non_compact_diagonal_face() {
        // x1 + x1 x2^2: diagonal face is the facet x1 ≤ 1, unbounded in −e2
        let e = polyhedron_at_infinity(&[v(&[1, 0]), v(&[1, 2])]).unwrap();
        let df = e.diagonal_face().unwrap();
        assert_eq!(df.sigma0, int(1));
        assert_eq!(df.rho0, 1);
        assert_eq!(df.face.recession, vec![1]);
    }

    #[test]
    fn dimension_budget() {
        let p = vec![int(1); 9];
        assert!(matches!(polyhedron_at_infinity(&[p]), Err(Error::DimensionBudget { .. })));
    }

    #[test]
    fn cone_membership_examples() {
        let basis = [v(&[1, 0]), v(&[0, 1])];
        let lam = cone_membership(&v(&[1, 1]), &basis, true).unwrap();
        assert_eq!(lam, v(&[1, 1]));
        assert!(cone_membership(&v(&[1, 0]), &basis, true).is_none());
        assert!(cone_membership(&v(&[1, 0]), &basis, false).is_some());
        assert!(cone_membership(&v(&[1, 1]), &[v(&[1, 1])], true).is_some());
        assert!(cone_membership(&v(&[-1, 1]), &basis, false).is_none());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of(&[v(&[1, 0]), v(&[0, 1])]), 2);
        assert_eq!(rank_of(&[v(&[1, 1]), v(&[2, 2])]), 1);
        assert_eq!(rank_of(&[]), 0);
    }
}
