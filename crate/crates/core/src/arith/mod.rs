//! Arithmetic functions of finite type on `N^n`: builtin families, uniform
//! multiplicative tables, their polar types and Euler-product constants.

pub mod euler;
pub mod sieve;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::constants::PolarType;
use crate::error::{Error, Result};
use crate::linalg;
use crate::newton::{self, HalfspacePolyhedron};
use crate::numeric::special::zeta;
use crate::rat::{self, Rat};

pub use euler::{euler_product, EulerProduct, LocalFactor, PrimeSource};
pub use sieve::Sieve;

/// `ν ↦ f(p^{ν_1}, …, p^{ν_n})`, independent of `p`; unlisted `ν` map to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalTable {
    n: usize,
    entries: BTreeMap<Vec<u32>, f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableJson {
    n: usize,
    entries: Vec<EntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryJson {
    nu: Vec<u32>,
    value: f64,
}

impl LocalTable {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("arity must be ≥ 1".into()));
        }
        let mut map = BTreeMap::new();
        for (nu, v) in entries {
            if nu.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: nu.len() });
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!("non-finite table value at {nu:?}")));
            }
            if v != 0.0 {
                map.insert(nu, v);
            }
        }
        match map.get(&vec![0; n]) {
            None => {
                map.insert(vec![0; n], 1.0);
            }
            Some(&v) if v != 1.0 => {
                return Err(Error::Invalid(format!("a multiplicative table needs f(1) = 1, got {v}")));
            }
            _ => {}
        }
        Ok(Self { n, entries: map })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: TableJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("table JSON: {e}")))?;
        Self::new(j.n, j.entries.into_iter().map(|e| (e.nu, e.value)))
    }

    pub fn to_json(&self) -> String {
        let j = TableJson {
            n: self.n,
            entries: self.entries.iter().map(|(nu, &value)| EntryJson { nu: nu.clone(), value }).collect(),
        };
        serde_json::to_string(&j).expect("table serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, nu: &[u32]) -> f64 {
        self.entries.get(nu).copied().unwrap_or(0.0)
    }

    /// `S*(f)`: nonzero exponents with nonzero value.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.entries.keys().filter(|nu| nu.iter().any(|&v| v > 0)).cloned().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, f64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.fract() == 0.0)
    }

    /// The box `{ν : ν_i ≤ k}` filled by `value`.
    fn boxed(n: usize, k: u32, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut entries = Vec::new();
        let mut nu = vec![0u32; n];
        loop {
            if keep(&nu) {
                entries.push((nu.clone(), 1.0));
            }
            let mut i = 0;
            while i < n && nu[i] == k {
                nu[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            nu[i] += 1;
        }
        Self::new(n, entries).expect("box table is valid")
    }
}

/// The builtin families and user tables.
#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    /// `f ≡ 1`
    Unit,
    /// every `m_i` is `k`-free
    ComponentwiseKFree(u32),
    /// `m_1⋯m_n` is `k`-free
    ProductKFree(u32),
    /// `Λ(m_1)⋯Λ(m_n)`
    Mangoldt,
    /// `∏ log m_i` when every `m_i` is prime, else 0
    LogPrime,
    Uniform(LocalTable),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Unit => write!(f, "unit"),
            Kind::ComponentwiseKFree(k) => write!(f, "B{k}"),
            Kind::ProductKFree(k) => write!(f, "D{k}"),
            Kind::Mangoldt => write!(f, "mangoldt"),
            Kind::LogPrime => write!(f, "logprime"),
            Kind::Uniform(_) => write!(f, "table"),
        }
    }
}

/// A weight `f : N^n → R`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticFunction {
    kind: Kind,
    n: usize,
}

impl ArithmeticFunction {
    pub fn builtin(kind: Kind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("arity must be ≥ 1".into()));
        }
        match &kind {
            Kind::ComponentwiseKFree(k) | Kind::ProductKFree(k) if *k < 2 => {
                return Err(Error::Invalid(format!("k-free needs k ≥ 2, got {k}")));
            }
            Kind::Uniform(t) if t.n() != n => {
                return Err(Error::DimensionMismatch { expected: n, got: t.n() });
            }
            _ => {}
        }
        Ok(Self { kind, n })
    }

    /// Parses `unit`, `B<k>`, `D<k>`, `mangoldt` or `logprime` (case-insensitive).
    pub fn parse_kind(text: &str) -> Result<Kind> {
        let t = text.trim().to_ascii_lowercase();
        let k_of = |rest: &str| -> Result<u32> {
            rest.trim_start_matches(':')
                .parse()
                .map_err(|_| Error::Invalid(format!("bad k in {text:?}")))
        };
        match t.as_str() {
            "unit" | "1" | "one" => Ok(Kind::Unit),
            "mangoldt" | "lambda" => Ok(Kind::Mangoldt),
            "logprime" | "theta" => Ok(Kind::LogPrime),
            _ if t.starts_with('b') => Ok(Kind::ComponentwiseKFree(k_of(&t[1..])?)),
            _ if t.starts_with('d') => Ok(Kind::ProductKFree(k_of(&t[1..])?)),
            _ => Err(Error::Unsupported(format!("arithmetic function {text:?}"))),
        }
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    /// Integer-valued weights are summed exactly.
    pub fn is_integer_valued(&self) -> bool {
        match &self.kind {
            Kind::Mangoldt | Kind::LogPrime => false,
            Kind::Uniform(t) => t.is_integral(),
            _ => true,
        }
    }

    /// Product of one-variable weights, which admits prefix-sum counting.
    pub fn is_componentwise(&self) -> bool {
        matches!(self.kind, Kind::Unit | Kind::ComponentwiseKFree(_) | Kind::Mangoldt | Kind::LogPrime)
    }

    pub fn is_multiplicative(&self) -> bool {
        !matches!(self.kind, Kind::Mangoldt | Kind::LogPrime)
    }

    /// One-variable weight for componentwise kinds.
    pub fn component(&self, m: u64, sieve: &Sieve) -> f64 {
        match &self.kind {
            Kind::Unit => 1.0,
            Kind::ComponentwiseKFree(k) => f64::from(u8::from(sieve.max_valuation(m) < *k)),
            Kind::Mangoldt => sieve.prime_power_base(m).map_or(0.0, |p| (p as f64).ln()),
            Kind::LogPrime => {
                if sieve.is_prime(m) {
                    (m as f64).ln()
                } else {
                    0.0
                }
            }
            _ => panic!("{} is not componentwise", self.kind),
        }
    }

    /// `f(m)`; all coordinates must lie within the sieve.
    pub fn eval(&self, m: &[u64], sieve: &Sieve) -> f64 {
        assert_eq!(m.len(), self.n);
        if self.is_componentwise() {
            return m.iter().map(|&x| self.component(x, sieve)).product();
        }
        // multiplicative: combine the valuation vectors prime by prime
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (i, &x) in m.iter().enumerate() {
            for (p, v) in sieve.factor(x) {
                by_prime.entry(p).or_insert_with(|| vec![0; self.n])[i] = v;
            }
        }
        match &self.kind {
            Kind::ProductKFree(k) => {
                f64::from(u8::from(by_prime.values().all(|nu| nu.iter().sum::<u32>() < *k)))
            }
            Kind::Uniform(t) => by_prime.values().map(|nu| t.get(nu)).product(),
            _ => unreachable!(),
        }
    }

    /// The prime-independent local table, and whether it lists every nonzero value.
    pub fn local_table(&self) -> Option<(LocalTable, bool)> {
        let n = self.n;
        match &self.kind {
            // the box {0,1,2}^n already exhibits every point of E(1) that matters
            Kind::Unit => Some((LocalTable::boxed(n, 2, |_| true), false)),
            Kind::ComponentwiseKFree(k) => Some((LocalTable::boxed(n, k - 1, |_| true), true)),
            Kind::ProductKFree(k) => {
                Some((LocalTable::boxed(n, k - 1, |nu| nu.iter().sum::<u32>() < *k), true))
            }
            Kind::Uniform(t) => Some((t.clone(), true)),
            Kind::Mangoldt | Kind::LogPrime => None,
        }
    }
}

/// The finite-type data of `f` at its distinguished point `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteTypeDescriptor {
    /// `S*(f)` (possibly truncated; see `complete`)
    pub support: Vec<Vec<u32>>,
    /// the point `c` on `F(Σ_f)(1)`
    pub c: Vec<String>,
    #[serde(skip)]
    pub c_exact: Vec<Rat>,
    #[serde(skip)]
    pub polar_type: PolarType,
    pub directions: Vec<Vec<String>>,
    pub multiplicities: Vec<u32>,
    /// `ι(f) = |c|`
    pub iota: String,
    #[serde(skip)]
    pub iota_exact: Rat,
    pub h_at_zero: f64,
    pub h_error: f64,
    pub h_method: String,
    pub complete: bool,
    /// hypothesis on which the constant rests, if any
    pub conditional_on: Option<String>,
}

/// Options for the Euler-product part of `H_c(f;0)`.
#[derive(Debug, Default)]
pub struct HOptions {
    pub tol: f64,
    pub primes: PrimeSource,
}

impl HOptions {
    pub fn new(tol: f64, primes: PrimeSource) -> Self {
        Self { tol, primes }
    }
}

/// The minimal-norm face of `Σ_f`, its barycenter `c`, and `I_c`.
fn distinguished_point(support: &[Vec<Rat>]) -> Result<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let sigma = HalfspacePolyhedron::new(support)?;
    let (_, face) = sigma.index();
    let k = Rat::from_integer((face.active.len() as i64).into());
    let n = sigma.n();
    let c: Vec<Rat> = (0..n).map(|i| face.active.iter().map(|v| v[i].clone()).sum::<Rat>() / &k).collect();
    let ic: Vec<Vec<Rat>> = support.iter().filter(|b| rat::dot(b, &c) == Rat::one()).cloned().collect();
    Ok((c, ic))
}

/// Independent route through `E(f) = conv(S*) + R₊^n`: the smallest face meeting
/// the diagonal must be compact and contain exactly `I_c` among `S*`.
fn check_against_upper_polyhedron(support: &[Vec<Rat>], c: &[Rat], ic: &[Vec<Rat>]) -> Result<()> {
    let n = c.len();
    let dirs: Vec<Vec<Rat>> = (0..n).map(|i| rat::unit_vec(n, i)).collect();
    let facets = newton::homogenized_facets(support, &dirs)
        .ok_or_else(|| Error::Invalid("E(f) is not full dimensional".into()))?;
    // t·1 ∈ E iff y0 + t|y'| ≥ 0 for every facet
    let bounded: Vec<&(Rat, Vec<Rat>)> = facets.iter().filter(|(y0, _)| *y0 < Rat::zero()).collect();
    let t_of = |(y0, y): &(Rat, Vec<Rat>)| -y0 / rat::l1(y);
    let t_star = bounded.iter().map(|f| t_of(f)).max().ok_or_else(|| Error::Invalid("E(f) contains 0".into()))?;
    let active: Vec<&(Rat, Vec<Rat>)> = bounded.into_iter().filter(|f| t_of(f) == t_star).collect();
    for j in 0..n {
        if active.iter().all(|(_, y)| y[j].is_zero()) {
            return Err(Error::NonCompactFace(format!("the diagonal face of E(f) recedes along e{}", j + 1)));
        }
    }
    let mut on_face: Vec<Vec<Rat>> = support
        .iter()
        .filter(|g| active.iter().all(|(y0, y)| (y0 + rat::dot(y, g)).is_zero()))
        .cloned()
        .collect();
    let mut expect = ic.to_vec();
    on_face.sort();
    expect.sort();
    if on_face != expect {
        return Err(Error::Invalid("face of E(f) and first meet locus of Σ_f disagree".into()));
    }
    if on_face.iter().any(|g| rat::dot(c, g) != Rat::one()) || support.iter().any(|g| rat::dot(c, g) < Rat::one()) {
        return Err(Error::Invalid("c is not a normalized polar vector of the face".into()));
    }
    Ok(())
}

/// Finite-type descriptor of `f`, including `H_c(f;0)`.
pub fn finite_type_descriptor(f: &ArithmeticFunction, opts: &mut HOptions) -> Result<FiniteTypeDescriptor> {
    let n = f.n();
    let render = |v: &[Rat]| v.iter().map(rat::render).collect::<Vec<_>>();
    let Some((table, complete)) = f.local_table() else {
        // Λ and log-prime weights: M = ∏ (−ζ'/ζ)(s_i) up to holomorphic factors,
        // a simple pole of residue 1 in each coordinate at c = 1
        let betas: Vec<Vec<Rat>> = (0..n).map(|i| rat::unit_vec(n, i)).collect();
        let c = rat::ones(n);
        return Ok(FiniteTypeDescriptor {
            support: (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect(),
            c: render(&c),
            iota_exact: rat::int(n as i64),
            iota: n.to_string(),
            c_exact: c,
            directions: betas.iter().map(|b| render(b)).collect(),
            polar_type: PolarType::new(betas, vec![1; n])?,
            multiplicities: vec![1; n],
            h_at_zero: 1.0,
            h_error: 0.0,
            h_method: "residue of -zeta'/zeta".into(),
            complete: true,
            conditional_on: Some("Riemann hypothesis (error term of the prime number theorem)".into()),
        });
    };
    let support = table.support();
    if support.is_empty() {
        return Err(Error::Invalid("f vanishes off the origin".into()));
    }
    let rs: Vec<Vec<Rat>> = support.iter().map(|nu| nu.iter().map(|&v| rat::int(v as i64)).collect()).collect();
    let (c, ic) = distinguished_point(&rs)?;
    check_against_upper_polyhedron(&rs, &c, &ic)?;
    let mut mult = Vec::with_capacity(ic.len());
    for b in &ic {
        let nu: Vec<u32> = b.iter().map(|x| rat::to_f64(x) as u32).collect();
        let v = table.get(&nu);
        if v < 1.0 || v.fract() != 0.0 {
            return Err(Error::NonIntegerMultiplicity { nu, value: v });
        }
        mult.push(v as u32);
    }
    let total_u: u32 = mult.iter().sum();
    let (h, h_err, method) = match f.kind() {
        Kind::Unit => (1.0, 0.0, "product of zeta residues".to_string()),
        Kind::ComponentwiseKFree(k) => (zeta(*k as f64).powi(-(n as i32)), 1e-15, "zeta(k)^-n".to_string()),
        _ => {
            let weights: Vec<(Rat, f64)> = table
                .entries()
                .map(|(nu, v)| {
                    let e = nu.iter().zip(&c).map(|(&x, ci)| ci * rat::int(x as i64)).sum::<Rat>();
                    (e, v)
                })
                .collect();
            let factor = LocalFactor::regularized(&weights, total_u)?;
            let r = euler_product(&factor, opts.tol, &mut opts.primes)?;
            (r.value, r.tail_bound, format!("Euler product to {}", r.pmax))
        }
    };
    if h == 0.0 {
        return Err(Error::Invalid("H_c(f;0) vanishes".into()));
    }
    let iota = rat::l1(&c);
    Ok(FiniteTypeDescriptor {
        support,
        c: render(&c),
        directions: ic.iter().map(|b| render(b)).collect(),
        polar_type: PolarType::new(ic, mult.clone())?,
        multiplicities: mult,
        iota: rat::render(&iota),
        iota_exact: iota,
        c_exact: c,
        h_at_zero: h,
        h_error: h_err,
        h_method: method,
        complete,
        conditional_on: None,
    })
}

/// `H_c(f;0)` alone.
pub fn h_at_zero(f: &ArithmeticFunction, opts: &mut HOptions) -> Result<(f64, f64)> {
    finite_type_descriptor(f, opts).map(|d| (d.h_at_zero, d.h_error))
}

/// Rank of the polar directions, used for the rank hypothesis of the prediction.
pub fn directions_rank(d: &FiniteTypeDescriptor) -> usize {
    linalg::rank(d.polar_type.directions())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn opts() -> HOptions {
        HOptions::new(1e-8, PrimeSource::new(None))
    }

    #[test]
    fn builtin_examples() {
        let s = Sieve::new(100).unwrap();
        let b2 = ArithmeticFunction::builtin(Kind::ComponentwiseKFree(2), 2).unwrap();
        assert_eq!(b2.eval(&[4, 3], &s), 0.0);
        assert_eq!(b2.eval(&[6, 15], &s), 1.0);
        let d2 = ArithmeticFunction::builtin(Kind::ProductKFree(2), 2).unwrap();
        assert_eq!(d2.eval(&[2, 2], &s), 0.0);
        assert_eq!(d2.eval(&[2, 3], &s), 1.0);
        assert_eq!(d2.eval(&[6, 15], &s), 0.0);
        let lam = ArithmeticFunction::builtin(Kind::Mangoldt, 1).unwrap();
        assert!((lam.eval(&[8], &s) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(lam.eval(&[6], &s), 0.0);
        assert_eq!(lam.eval(&[1], &s), 0.0);
        assert!(ArithmeticFunction::builtin(Kind::ProductKFree(1), 2).is_err());
    }

    #[test]
    fn product_kfree_in_one_variable_is_componentwise() {
        let s = Sieve::new(5000).unwrap();
        for k in 2..5 {
            let a = ArithmeticFunction::builtin(Kind::ProductKFree(k), 1).unwrap();
            let b = ArithmeticFunction::builtin(Kind::ComponentwiseKFree(k), 1).unwrap();
            for m in 1..=5000 {
                assert_eq!(a.eval(&[m], &s), b.eval(&[m], &s));
            }
        }
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(ArithmeticFunction::parse_kind("B2").unwrap(), Kind::ComponentwiseKFree(2));
        assert_eq!(ArithmeticFunction::parse_kind("d:3").unwrap(), Kind::ProductKFree(3));
        assert_eq!(ArithmeticFunction::parse_kind("Mangoldt").unwrap(), Kind::Mangoldt);
        assert!(ArithmeticFunction::parse_kind("zeta").is_err());
    }

    #[test]
    fn descriptor_b2() {
        let f = ArithmeticFunction::builtin(Kind::ComponentwiseKFree(2), 2).unwrap();
        let d = finite_type_descriptor(&f, &mut opts()).unwrap();
        assert_eq!(d.support, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(d.c_exact, rv(&[1, 1]));
        assert_eq!(d.polar_type.directions(), &[rv(&[0, 1]), rv(&[1, 0])]);
        assert_eq!(d.multiplicities, vec![1, 1]);
        let z2 = zeta(2.0);
        assert!((d.h_at_zero - 1.0 / (z2 * z2)).abs() < 1e-14);
    }

    #[test]
    fn descriptor_unit_and_one_dimensional() {
        for n in 1..=3 {
            let f = ArithmeticFunction::builtin(Kind::Unit, n).unwrap();
            let d = finite_type_descriptor(&f, &mut opts()).unwrap();
            assert_eq!(d.c_exact, rat::ones(n));
            assert_eq!(d.iota_exact, int(n as i64));
            assert_eq!(d.h_at_zero, 1.0);
            assert!(!d.complete);
        }
        let f = ArithmeticFunction::builtin(Kind::ComponentwiseKFree(3), 1).unwrap();
        let d = finite_type_descriptor(&f, &mut opts()).unwrap();
        assert_eq!(d.support, vec![vec![1], vec![2]]);
        assert_eq!(d.c_exact, rv(&[1]));
        assert_eq!(d.polar_type.directions(), &[rv(&[1])]);
    }

    #[test]
    fn bk_euler_product_matches_zeta_power() {
        // the generic Euler-product route for B_k reproduces ζ(k)^{−n}
        for (k, n) in [(2u32, 1usize), (2, 2), (3, 2)] {
            let f = ArithmeticFunction::builtin(Kind::ComponentwiseKFree(k), n).unwrap();
            let (table, _) = f.local_table().unwrap();
            let weights: Vec<(Rat, f64)> =
                table.entries().map(|(nu, v)| (int(nu.iter().sum::<u32>() as i64), v)).collect();
            let factor = LocalFactor::regularized(&weights, n as u32).unwrap();
            let r = euler_product(&factor, 1e-9, &mut PrimeSource::new(None)).unwrap();
            let expect = zeta(k as f64).powi(-(n as i32));
            assert!((r.value - expect).abs() < 2e-9, "k={k} n={n}: {} vs {expect}", r.value);
        }
    }

    #[test]
    fn descriptor_d2() {
        let f = ArithmeticFunction::builtin(Kind::ProductKFree(2), 2).unwrap();
        let d = finite_type_descriptor(&f, &mut opts()).unwrap();
        assert_eq!(d.c_exact, rv(&[1, 1]));
        assert_eq!(d.multiplicities, vec![1, 1]);
        // ∏ (1 − 3/p² + 2/p³) ≈ 0.2867474
        assert!((d.h_at_zero - 0.286_747_4).abs() < 1e-6, "{}", d.h_at_zero);
    }

    #[test]
    fn descriptor_rejects_bad_tables() {
        let t = LocalTable::new(1, [(vec![1], 0.5)]).unwrap();
        let f = ArithmeticFunction::builtin(Kind::Uniform(t), 1).unwrap();
        assert!(matches!(
            finite_type_descriptor(&f, &mut opts()),
            Err(Error::NonIntegerMultiplicity { .. })
        ));
        // f(p) = 2, f(p²) = 1: divisor-like table with a double pole
        let t = LocalTable::new(1, [(vec![1], 2.0), (vec![2], 3.0)]).unwrap();
        let f = ArithmeticFunction::builtin(Kind::Uniform(t), 1).unwrap();
        let d = finite_type_descriptor(&f, &mut opts()).unwrap();
        assert_eq!(d.multiplicities, vec![2]);
        // (1−x)²(1+2x+3x²) = 1 − 4x³ + 3x⁴
        let primes = sieve::primes_up_to(100_000);
        let direct: f64 = primes.iter().map(|&p| {
            let x = 1.0 / p as f64;
            (1.0 - x).powi(2) * (1.0 + 2.0 * x + 3.0 * x * x)
        }).product();
        assert!((d.h_at_zero - direct).abs() < 1e-8);
        assert!(LocalTable::new(1, [(vec![0], 2.0)]).is_err());
    }

    #[test]
    fn table_json_roundtrip() {
        let t = LocalTable::new(2, [(vec![1, 0], 1.0), (vec![0, 1], 1.0), (vec![1, 1], 2.0)]).unwrap();
        let back = LocalTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
