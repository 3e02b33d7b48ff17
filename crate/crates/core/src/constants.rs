//! Sargos constants `A₀(P)`, volume constants `A₀(I;u;b)` and the mixed
//! constants `A₀(T;P)` built by the transpose construction.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::logradial::LogRadial;
use crate::error::{Error, Result};
use crate::linalg;
use crate::newton::{volume::polytope_volume, PolyhedronAtInfinity};
use crate::numeric::quad::{integrate, integrate_to_infinity, QuadOptions};
use crate::numeric::richardson::{geometric_ladder, neville_diagonal};
use crate::numeric::Estimate;
use crate::polyring::{ExponentVector, GenPoly};
use crate::rat::{self, Rat};

/// Largest number of variables `q = Σ u(β)` of a generalized polynomial.
pub const MAX_VARIABLES: usize = 8;

/// `T = (I, u)`: polar directions with pole multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarType {
    betas: Vec<Vec<Rat>>,
    mult: Vec<u32>,
}

impl PolarType {
    pub fn new(betas: Vec<Vec<Rat>>, mult: Vec<u32>) -> Result<Self> {
        let n = betas.first().ok_or_else(|| Error::Invalid("polar type with no directions".into()))?.len();
        if mult.len() != betas.len() {
            return Err(Error::DimensionMismatch { expected: betas.len(), got: mult.len() });
        }
        if let Some(b) = betas.iter().find(|b| b.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        if betas.iter().any(|b| b.iter().any(|x| *x < Rat::zero()) || rat::is_zero_vec(b)) {
            return Err(Error::Invalid("directions must lie in Q₊^n \\ {0}".into()));
        }
        if mult.contains(&0) {
            return Err(Error::Invalid("multiplicities must be ≥ 1".into()));
        }
        let mut sorted = betas.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated direction in polar type".into()));
        }
        Ok(Self { betas, mult })
    }

    /// `({e_1..e_n}, u ≡ 1)`.
    pub fn coordinate(n: usize) -> Self {
        Self { betas: (0..n).map(|i| rat::unit_vec(n, i)).collect(), mult: vec![1; n] }
    }

    pub fn directions(&self) -> &[Vec<Rat>] {
        &self.betas
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn n(&self) -> usize {
        self.betas[0].len()
    }

    /// `ρ₀(T) = Σ u − rank I + 1`.
    pub fn rho0(&self) -> usize {
        self.mult.iter().sum::<u32>() as usize + 1 - linalg::rank(&self.betas)
    }
}

/// Output of [`mixed_exponents`].
#[derive(Debug, Clone, PartialEq)]
pub struct MixedData {
    /// `α^i_j = γ^j_i`, `i = 1..n`
    pub alphas: Vec<Vec<Rat>>,
    pub i_tp: Vec<Vec<Rat>>,
    pub u_tp: Vec<u32>,
    pub rho0_t: usize,
    pub rho0_tp: usize,
    /// coefficients of `P` in term order
    pub b: Vec<f64>,
}

/// Rows become columns.
pub fn transpose(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    (0..width).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mixed_exponents(t: &PolarType, p: &GenPoly) -> Result<MixedData> {
    let n = p.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: t.n() });
    }
    let gammas = p.support();
    let alphas = transpose(&gammas);
    let mut merged: BTreeMap<Vec<Rat>, u32> = BTreeMap::new();
    for (beta, &u) in t.betas.iter().zip(&t.mult) {
        // μ(β)_k = Σ_i β_i α^i_k = ⟨β, γ^k⟩
        let mu: Vec<Rat> = gammas.iter().map(|g| rat::dot(beta, g)).collect();
        *merged.entry(mu).or_insert(0) += u;
    }
    let (i_tp, u_tp): (Vec<Vec<Rat>>, Vec<u32>) = merged.into_iter().unzip();
    let rho0_tp = u_tp.iter().sum::<u32>() as usize + 1 - linalg::rank(&i_tp);
    Ok(MixedData { alphas, i_tp, u_tp, rho0_t: t.rho0(), rho0_tp, b: p.coefficients() })
}

/// `P_{(I;u;b)} = Σ_k b_k X^{γ^k}` in `q = Σ u(β)` variables, where the
/// `α`-list repeats each `β` `u(β)` times and `γ` is its transpose.
pub fn build_generalized_polynomial(i: &[Vec<Rat>], u: &[u32], b: &[f64]) -> Result<GenPoly> {
    let r = i.first().ok_or_else(|| Error::Invalid("empty direction set".into()))?.len();
    if u.len() != i.len() {
        return Err(Error::DimensionMismatch { expected: i.len(), got: u.len() });
    }
    if b.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: b.len() });
    }
    let q: usize = u.iter().map(|&x| x as usize).sum();
    if q > MAX_VARIABLES {
        return Err(Error::BudgetExceeded(format!("{q} variables exceed the limit of {MAX_VARIABLES}")));
    }
    if q == 0 {
        return Err(Error::Invalid("multiplicities must be ≥ 1".into()));
    }
    let alphas: Vec<Vec<Rat>> =
        i.iter().zip(u).flat_map(|(beta, &m)| std::iter::repeat(beta.clone()).take(m as usize)).collect();
    let gammas = transpose(&alphas);
    let terms = gammas
        .into_iter()
        .zip(b)
        .map(|(g, &bk)| Ok((ExponentVector::new(g)?, bk)))
        .collect::<Result<Vec<_>>>()?;
    GenPoly::from_terms(q, terms)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub method: String,
    pub sigma0: String,
    pub rho0: usize,
}

/// Ladder `s = σ0 + h·2^{−j}`, `j = 0..=levels`, for the pole limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitOptions {
    pub h: f64,
    pub levels: usize,
    /// relative tolerance of each `Y` evaluation
    pub rel: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        Self { h: 0.25, levels: 6, rel: 1e-10 }
    }
}

/// `lim (s−σ0)^{ρ0} Y(1+P;s)` by Neville extrapolation in `s − σ0`.
pub fn sargos_constant_limit(p: &GenPoly, opts: &LimitOptions) -> Result<ConstantEstimate> {
    let df = PolyhedronAtInfinity::new(&p.support())?.diagonal_face()?;
    let sigma0 = rat::to_f64(&df.sigma0);
    let lr = LogRadial::new(&p.plus_constant(1.0)?);
    let h = geometric_ladder(opts.h, opts.levels);
    let mut g = Vec::with_capacity(h.len());
    let mut quad_err: f64 = 0.0;
    for &hj in &h {
        let y = lr.integrate(sigma0 + hj, None, opts.rel)?;
        let scale = hj.powi(df.rho0 as i32);
        g.push(y.value * scale);
        quad_err = quad_err.max(y.error * scale);
    }
    let diag = neville_diagonal(&h, &g);
    let k = diag.len();
    let value = diag[k - 1];
    // amplification of the per-point error through the tableau is bounded by 2^k
    let error_estimate = (value - diag[k - 2]).abs() + quad_err * 2f64.powi(k as i32);
    Ok(ConstantEstimate {
        value,
        error_estimate,
        method: "pole limit of Y(1+P;s)".into(),
        sigma0: rat::render(&df.sigma0),
        rho0: df.rho0,
    })
}

/// `A₀(I;u;b)` by the pole limit.
pub fn volume_constant(i: &[Vec<Rat>], u: &[u32], b: &[f64], opts: &LimitOptions) -> Result<ConstantEstimate> {
    sargos_constant_limit(&build_generalized_polynomial(i, u, b)?, opts)
}

/// `∫_{Δ} f(w) dw_1…dw_{n−1}` over the standard simplex `{w ≥ 0, Σw = 1}`.
fn simplex_integral(n: usize, f: &dyn Fn(&[f64]) -> f64, opts: &QuadOptions) -> Result<Estimate> {
    fn rec(
        k: usize,
        n: usize,
        prefix: &mut Vec<f64>,
        rest: f64,
        f: &dyn Fn(&[f64]) -> f64,
        opts: &QuadOptions,
        ok: &mut bool,
    ) -> (f64, f64) {
        if k + 1 == n {
            prefix.push(rest);
            let v = f(prefix);
            prefix.pop();
            return (v, 0.0);
        }
        let mut inner_err = 0.0;
        let res = integrate(
            |w| {
                prefix.push(w);
                let (v, e) = rec(k + 1, n, prefix, (rest - w).max(0.0), f, opts, ok);
                prefix.pop();
                inner_err += e * (rest / 21.0);
                v
            },
            0.0,
            rest,
            opts,
        );
        *ok &= res.converged;
        (res.value, res.error + inner_err.min(res.value.abs()))
    }
    let mut ok = true;
    let (v, e) = rec(0, n, &mut Vec::with_capacity(n), 1.0, f, opts, &mut ok);
    if !ok {
        return Err(Error::Quadrature("simplex integral reached its panel budget".into()));
    }
    Ok(Estimate::new(v, e))
}

/// `(1/d) ∫_{S^{n−1}∩R₊^n} P_d^{−n/d} dσ` for elliptic `P`.
///
/// With `v = w/‖w‖` on the simplex, `dσ = ‖w‖^{−n} dw` in the coordinates
/// `w_1..w_{n−1}`, and `P_d(v)^{−n/d} = ‖w‖^{n} P_d(w)^{−n/d}`, so the norms
/// cancel and the integrand is `P_d(w)^{−n/d}`.
pub fn sargos_constant_elliptic(p: &GenPoly, rel: f64) -> Result<ConstantEstimate> {
    if !p.is_elliptic() {
        return Err(Error::NotElliptic);
    }
    let n = p.n();
    let pd = p.homogeneous_part().compile();
    let d = pd.degree();
    let e = -(n as f64) / d;
    let opts = QuadOptions::new(0.0, rel).with_max_intervals(4000);
    let est = simplex_integral(n, &|w: &[f64]| pd.eval(w).powf(e), &opts)?;
    Ok(ConstantEstimate {
        value: est.value / d,
        error_estimate: est.error / d,
        method: "sphere integral of P_d^(-n/d)".into(),
        sigma0: rat::render(&(Rat::from_integer((n as i64).into()) / p.degree())),
        rho0: 1,
    })
}

/// Samples per independently seeded Monte Carlo block.
const BLOCK: u64 = 1 << 16;

/// Monte Carlo volume of `{x ∈ R₊^n : P_d(x) ≤ 1}` with its standard error.
/// Block `k` draws from the ChaCha8 stream `k` of `seed`, so the estimate does
/// not depend on the thread count.
pub fn sublevel_volume(pd: &GenPoly, samples: u64, seed: u64) -> Result<Estimate> {
    if !pd.is_homogeneous() || !pd.is_elliptic() {
        return Err(Error::NotElliptic);
    }
    let n = pd.n();
    let d = rat::to_f64(&pd.degree());
    let side: Vec<f64> =
        (0..n).map(|i| pd.pure_power_coefficient(i).expect("elliptic").powf(-1.0 / d)).collect();
    let box_vol: f64 = side.iter().product();
    let cp = pd.compile();
    let blocks = samples.div_ceil(BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let len = BLOCK.min(samples - k * BLOCK);
            let mut x = vec![0.0; n];
            let mut hit = 0u64;
            for _ in 0..len {
                for (xi, s) in x.iter_mut().zip(&side) {
                    *xi = rng.gen::<f64>() * s;
                }
                hit += u64::from(cp.eval(&x) <= 1.0);
            }
            hit
        })
        .collect::<Vec<u64>>()
        .into_iter()
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(Estimate::new(box_vol * p, box_vol * (p * (1.0 - p) / samples as f64).sqrt()))
}

/// `A₀(T;P) = A₀(I_{T,P}; u_{T,P}; b)`. The sphere formula is used when the
/// generalized polynomial is elliptic, the pole limit otherwise.
pub fn mixed_volume_constant(t: &PolarType, p: &GenPoly, opts: &LimitOptions) -> Result<ConstantEstimate> {
    let m = mixed_exponents(t, p)?;
    let q = build_generalized_polynomial(&m.i_tp, &m.u_tp, &m.b)?;
    if q.is_elliptic() {
        let mut est = sargos_constant_elliptic(&q, opts.rel.max(1e-12))?;
        est.rho0 = PolyhedronAtInfinity::new(&q.support())?.diagonal_face()?.rho0;
        Ok(est)
    } else {
        sargos_constant_limit(&q, opts)
    }
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// `∫ f` over `R₊^{k0} × [1,∞)^{k1}`, coordinates listed by their lower limits.
fn orthant_integral(lower: &[f64], f: &dyn Fn(&[f64]) -> f64, opts: &QuadOptions) -> Result<Estimate> {
    fn rec(lower: &[f64], x: &mut Vec<f64>, f: &dyn Fn(&[f64]) -> f64, opts: &QuadOptions, ok: &mut bool) -> f64 {
        let k = x.len();
        if k == lower.len() {
            return f(x);
        }
        // x = e^y turns the algebraic end behaviour into exponential decay
        let mut g = |y: f64| {
            let t = y.exp();
            x.push(t);
            let v = rec(lower, x, f, opts, ok) * t;
            x.pop();
            v
        };
        let up = integrate_to_infinity(&mut g, lower[k].max(1.0).ln(), opts);
        let mut converged = up.converged;
        let mut value = up.value;
        if lower[k] == 0.0 {
            let down = integrate_to_infinity(|y| g(-y), 0.0, opts);
            converged &= down.converged;
            value += down.value;
        }
        *ok &= converged;
        value
    }
    let mut ok = true;
    let v = rec(lower, &mut Vec::with_capacity(lower.len()), f, opts, &mut ok);
    if !ok || !v.is_finite() {
        return Err(Error::Quadrature("iterated integral of P_G0^(-σ0) did not converge".into()));
    }
    Ok(Estimate::new(v, v.abs() * opts.rel_tol * lower.len() as f64))
}

/// `n!·Vol(Λ)·∫ P_{G0}^{−σ0}(1, x, y)`, searched over coordinate permutations
/// (`n ≤ 3`). Every valid permutation is evaluated and they must agree.
///
/// The inner integral runs over `R₊^{m−ρ0} × [1,∞)^{n−m}`: the coordinates fixed to 1
/// account for `ρ0` of the `m` non-receding ones.
pub fn sargos_constant_direct(p: &GenPoly, rel: f64) -> Result<ConstantEstimate> {
    let n = p.n();
    if n > 3 {
        return Err(Error::Unsupported(format!("direct formula needs n ≤ 3, got {n}")));
    }
    if !p.depends_on_all() {
        return Err(Error::Invalid("P must depend on every variable".into()));
    }
    let e = PolyhedronAtInfinity::new(&p.support())?;
    let df = e.diagonal_face()?;
    let rho0 = df.rho0;
    let gens = &df.face.active;
    let receding = &df.face.recession;
    let m = n - receding.len();
    let mut span: Vec<Vec<Rat>> =
        gens[1..].iter().map(|g| g.iter().zip(&gens[0]).map(|(a, b)| a - b).collect()).collect();
    span.extend(receding.iter().map(|&j| rat::unit_vec(n, j)));
    debug_assert_eq!(linalg::rank(&span), n - rho0);
    let polars: Vec<Vec<Rat>> = df.facets.iter().map(|&i| e.facets()[i].polar().expect("positive offset")).collect();
    let pg0 = p
        .filter_terms(|ev| gens.iter().any(|g| g.as_slice() == ev.coords()))
        .expect("G0 contains a support point")
        .compile();
    let sigma0 = rat::to_f64(&df.sigma0);
    let n_fact: i64 = (1..=n as i64).product();
    let opts = QuadOptions::new(0.0, rel).with_max_intervals(2000);

    let mut found: Vec<(Vec<usize>, Estimate)> = Vec::new();
    for perm in permutations(n) {
        let mut tail = perm[m..].to_vec();
        tail.sort_unstable();
        if tail != *receding {
            continue;
        }
        let mut full = span.clone();
        full.extend(perm[..rho0].iter().map(|&i| rat::unit_vec(n, i)));
        if linalg::rank(&full) != n {
            continue;
        }
        let mut hull = vec![vec![Rat::zero(); n]];
        hull.extend(polars.iter().cloned());
        hull.extend(perm[rho0..].iter().map(|&i| rat::unit_vec(n, i)));
        let vol = rat::to_f64(&(polytope_volume(&hull) * Rat::from_integer(n_fact.into())));
        let lower: Vec<f64> = (rho0..n).map(|k| if k < m { 0.0 } else { 1.0 }).collect();
        let integrand = |free: &[f64]| {
            let mut z = vec![1.0; n];
            for (k, &v) in free.iter().enumerate() {
                z[perm[rho0 + k]] = v;
            }
            pg0.eval(&z).powf(-sigma0)
        };
        let int = orthant_integral(&lower, &integrand, &opts)?;
        found.push((perm.clone(), Estimate::new(vol * int.value, vol * int.error)));
    }
    let Some((perm, first)) = found.first().cloned() else {
        return Err(Error::NoValidPermutation);
    };
    let spread = found.iter().map(|(_, e)| (e.value - first.value).abs()).fold(0.0, f64::max);
    if spread > 1e-6_f64.max(100.0 * rel) * first.value.abs() {
        return Err(Error::Invalid(format!("valid permutations disagree by {spread:e}")));
    }
    Ok(ConstantEstimate {
        value: first.value,
        error_estimate: first.error.max(spread),
        method: format!("direct formula, permutation {perm:?} of {} valid", found.len()),
        sigma0: rat::render(&df.sigma0),
        rho0,
    })
}

/// Exact `σ0` and `ρ0` of `P`.
pub fn sigma0_rho0(p: &GenPoly) -> Result<(Rat, usize)> {
    let df = PolyhedronAtInfinity::new(&p.support())?.diagonal_face()?;
    Ok((df.sigma0, df.rho0))
}

impl MixedData {
    /// `Σ_η u_{T,P}(η)`.
    pub fn total_multiplicity(&self) -> u32 {
        self.u_tp.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;
    use crate::rat::int;
    use std::f64::consts::PI;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn mixed_exponent_examples() {
        let t = PolarType::coordinate(2);
        let m = mixed_exponents(&t, &parse("x1 x2").unwrap()).unwrap();
        assert_eq!(m.alphas, vec![rv(&[1]), rv(&[1])]);
        assert_eq!(m.i_tp, vec![rv(&[1])]);
        assert_eq!(m.u_tp, vec![2]);
        assert_eq!((m.rho0_tp, m.rho0_t), (2, 1));

        let m = mixed_exponents(&t, &parse("x1^2 + x2^2").unwrap()).unwrap();
        assert_eq!(m.i_tp, vec![rv(&[0, 2]), rv(&[2, 0])]);
        assert_eq!(m.u_tp, vec![1, 1]);
        assert_eq!((m.rho0_tp, m.rho0_t), (1, 1));

        let t = PolarType::new(vec![rv(&[1, 1])], vec![1]).unwrap();
        let m = mixed_exponents(&t, &parse("x1^2 + x2^2").unwrap()).unwrap();
        assert_eq!(m.i_tp, vec![rv(&[2, 2])]);
        assert_eq!(m.rho0_tp, 1);

        assert!(mixed_exponents(&PolarType::coordinate(3), &parse("x1 x2").unwrap()).is_err());
    }

    #[test]
    fn polar_type_validation() {
        assert!(PolarType::new(vec![], vec![]).is_err());
        assert!(PolarType::new(vec![rv(&[0, 0])], vec![1]).is_err());
        assert!(PolarType::new(vec![rv(&[1, 0])], vec![0]).is_err());
        assert!(PolarType::new(vec![rv(&[1, 0]), rv(&[1, 0])], vec![1, 1]).is_err());
        assert_eq!(PolarType::new(vec![rv(&[1, 0]), rv(&[1, 0]).into_iter().rev().collect()], vec![2, 1]).unwrap().rho0(), 2);
    }

    #[test]
    fn generalized_polynomial_examples() {
        let p = build_generalized_polynomial(&[rv(&[1, 0]), rv(&[0, 1])], &[1, 1], &[1.0, 1.0]).unwrap();
        assert_eq!(p, parse("x1 + x2").unwrap());
        let p = build_generalized_polynomial(&[rv(&[1])], &[2], &[1.0]).unwrap();
        assert_eq!(p, parse("x1 x2").unwrap());
        let p = build_generalized_polynomial(&[rv(&[1])], &[1], &[5.0]).unwrap();
        assert_eq!(p, parse("5 x1").unwrap());
        assert!(matches!(
            build_generalized_polynomial(&[rv(&[1])], &[9], &[1.0]),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(build_generalized_polynomial(&[rv(&[1])], &[1], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn limit_matches_closed_forms() {
        let opts = LimitOptions::default();
        let a = volume_constant(&[rv(&[1, 0]), rv(&[0, 1])], &[1, 1], &[1.0, 1.0], &opts).unwrap();
        assert!((a.value - 1.0).abs() < 1e-6, "{a:?}");
        assert_eq!((a.sigma0.as_str(), a.rho0), ("2", 1));
        let a = volume_constant(&[rv(&[1])], &[1], &[1.0], &opts).unwrap();
        assert!((a.value - 1.0).abs() < 1e-8, "{a:?}");
        // ∫∫_{[1,∞)²}(1+xy)^{−s} = (s−1)^{−2} + O((s−1)^{−1})
        let a = volume_constant(&[rv(&[1])], &[2], &[1.0], &opts).unwrap();
        assert!((a.value - 1.0).abs() < 1e-5, "{a:?}");
        assert_eq!(a.rho0, 2);
        let a = sargos_constant_limit(&parse("x1^2 + x2^2").unwrap(), &opts).unwrap();
        assert!((a.value - PI / 4.0).abs() < 1e-5, "{a:?}");
    }

    #[test]
    fn elliptic_examples() {
        let a = sargos_constant_elliptic(&parse("x1^2 + x2^2").unwrap(), 1e-12).unwrap();
        assert!((a.value - PI / 4.0).abs() < 1e-11);
        let a = sargos_constant_elliptic(&parse("x1 + x2").unwrap(), 1e-12).unwrap();
        assert!((a.value - 1.0).abs() < 1e-11);
        // octant of S²: area π/2, integrand 1
        let a = sargos_constant_elliptic(&parse("x1^2 + x2^2 + x3^2").unwrap(), 1e-11).unwrap();
        assert!((a.value - PI / 4.0).abs() < 1e-9);
        let a = sargos_constant_elliptic(&parse("3 x1^4").unwrap(), 1e-12).unwrap();
        assert!((a.value - 0.25 * 3f64.powf(-0.25)).abs() < 1e-14);
        // lower-order terms do not matter; scaling by λ gives λ^{−n/d}
        let base = sargos_constant_elliptic(&parse("x1^3 + x1 x2^2 + 2 x2^3 + x1").unwrap(), 1e-12).unwrap().value;
        let scaled = sargos_constant_elliptic(&parse("5 x1^3 + 5 x1 x2^2 + 10 x2^3").unwrap(), 1e-12).unwrap().value;
        assert!((scaled - base * 5f64.powf(-2.0 / 3.0)).abs() < 1e-10 * base);
        assert!(matches!(sargos_constant_elliptic(&parse("x1 x2").unwrap(), 1e-8), Err(Error::NotElliptic)));
    }

    #[test]
    fn sublevel_examples() {
        let check = |p: &str, exact: f64| {
            let v = sublevel_volume(&parse(p).unwrap(), 400_000, 7).unwrap();
            assert!((v.value - exact).abs() < 4.0 * v.error, "{p}: {v:?} vs {exact}");
        };
        check("x1^2 + x2^2", PI / 4.0);
        check("x1 + x2", 0.5);
        check("x1^2 + x2^2 + x3^2", PI / 6.0);
        let a = sublevel_volume(&parse("x1^2 + x2^2").unwrap(), 100_000, 3).unwrap();
        let b = sublevel_volume(&parse("x1^2 + x2^2").unwrap(), 100_000, 3).unwrap();
        assert_eq!(a, b);
        assert!(sublevel_volume(&parse("x1^2 + x2").unwrap(), 10, 1).is_err());
    }

    #[test]
    fn direct_formula_examples() {
        let d = |p: &str| sargos_constant_direct(&parse(p).unwrap(), 1e-10).unwrap();
        assert!((d("x1 + x2").value - 1.0).abs() < 1e-8);
        assert!((d("x1^2 + x2^2").value - PI / 4.0).abs() < 1e-8);
        assert!((d("x1").value - 1.0).abs() < 1e-12);
        assert!((d("x1 x2").value - 1.0).abs() < 1e-12);
        assert!((d("x1 + x2 + x3").value - 0.5).abs() < 1e-8);
        // G0 = {x1 = 1} recedes along e2: Y ~ (s−1)^{−1}·∫_1^∞ y^{−2}
        let a = d("x1 x2^2 + x2^3");
        assert!((a.value - 1.0).abs() < 1e-8, "{a:?}");
        assert!(sargos_constant_direct(&parse("x1 + x2 + x3 + x4").unwrap(), 1e-8).is_err());
    }

    #[test]
    fn direct_agrees_with_limit() {
        let opts = LimitOptions::default();
        for p in ["x1 x2^2 + x2^3", "x1^2 + x2 + x1 x2", "1 + x1^2 x2 + x1 x2^3"] {
            let p = parse(p).unwrap();
            let a = sargos_constant_direct(&p, 1e-10).unwrap().value;
            let b = sargos_constant_limit(&p, &opts).unwrap().value;
            assert!((a - b).abs() < 1e-3 * a, "{p}: direct {a}, limit {b}");
        }
    }

    #[test]
    fn mixed_constant_examples() {
        let opts = LimitOptions::default();
        let t = PolarType::coordinate(2);
        let a = mixed_volume_constant(&t, &parse("x1 + x2").unwrap(), &opts).unwrap();
        assert!((a.value - 1.0).abs() < 1e-8);
        let p = parse("x1^2 + x1 x2 + 3 x2^2").unwrap();
        let a = mixed_volume_constant(&t, &p, &opts).unwrap();
        let b = sargos_constant_elliptic(&p, 1e-12).unwrap();
        assert!((a.value - b.value).abs() < 1e-10);
        let a = mixed_volume_constant(&t, &parse("x1 x2").unwrap(), &opts).unwrap();
        assert_eq!(a.rho0, 2);
        assert!((a.value - 1.0).abs() < 1e-5);
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(3), vec![
            vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]
        ]);
    }
}
