//! Weighted lattice-point counts `N(f;P;t) = Σ_{P(m) ≤ t^d} f(m)` by pruned
//! enumeration, and the predicted main term `C₀ t^ι (log t)^{ρ−1}`.

use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{finite_type_descriptor, ArithmeticFunction, FiniteTypeDescriptor, HOptions, Kind, Sieve};
use crate::constants::{mixed_exponents, mixed_volume_constant, ConstantEstimate, LimitOptions};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::newton::cone_membership;
use crate::numeric::sum::NeumaierSum;
use crate::polyring::{CompiledPoly, GenPoly};
use crate::rat::{self, Rat};

/// Most variables handled by the enumerator.
pub const MAX_VARS: usize = 16;
/// Fixed number of work units along the first coordinate.
const CHUNKS: u64 = 512;

/// `P` with nonnegative integer exponents and integer coefficients, in `u128`.
#[derive(Debug, Clone)]
struct ExactPoly {
    terms: Vec<(u128, Vec<(usize, u32)>)>,
}

impl ExactPoly {
    fn new(p: &GenPoly) -> Option<Self> {
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            if c.fract() != 0.0 || c > 9.0e15 {
                return None;
            }
            let mut fs = Vec::new();
            for (i, x) in e.coords().iter().enumerate() {
                if !x.is_integer() {
                    return None;
                }
                let k = x.to_integer().to_u32()?;
                if k > 0 {
                    fs.push((i, k));
                }
            }
            terms.push((c as u128, fs));
        }
        Some(Self { terms })
    }

    #[inline]
    fn eval(&self, m: &[u64]) -> u128 {
        let mut s: u128 = 0;
        for (c, fs) in &self.terms {
            let mut t = *c;
            for &(i, k) in fs {
                t = t.saturating_mul((m[i] as u128).saturating_pow(k));
            }
            s = s.saturating_add(t);
        }
        s
    }
}

/// `{m ∈ N^n : P(m) ≤ t^d}`; membership is exact in `u128` when `P` has
/// integer data and `t^d` is known exactly (integer `t`).
#[derive(Debug, Clone)]
pub struct Region {
    n: usize,
    poly: CompiledPoly,
    exact: Option<(ExactPoly, u128)>,
    bound: f64,
}

impl Region {
    pub fn new(p: &GenPoly, t: f64) -> Result<Self> {
        let n = p.n();
        if n > MAX_VARS {
            return Err(Error::BudgetExceeded(format!("{n} variables exceed the enumerator limit {MAX_VARS}")));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("t = {t} must be positive and finite")));
        }
        if !p.depends_on_all() {
            return Err(Error::Invalid("P must depend on every variable for the region to be finite".into()));
        }
        let d = p.degree();
        let bound = t.powf(rat::to_f64(&d));
        let exact = (|| {
            let ep = ExactPoly::new(p)?;
            if !d.is_integer() {
                return None;
            }
            let dk = d.to_integer().to_u32()?;
            let b = if t.fract() == 0.0 && t < 1.8e19 {
                (t as u128).checked_pow(dk)?
            } else if bound < 1e30 {
                bound.floor() as u128
            } else {
                return None;
            };
            Some((ep, b))
        })();
        Ok(Self { n, poly: p.compile(), exact, bound })
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    #[inline]
    pub fn contains(&self, m: &[u64]) -> bool {
        match &self.exact {
            Some((ep, b)) => ep.eval(m) <= *b,
            None => {
                let mut x = [0.0; MAX_VARS];
                for (xi, &mi) in x.iter_mut().zip(m) {
                    *xi = mi as f64;
                }
                self.poly.eval(&x[..self.n]) <= self.bound
            }
        }
    }

    /// `ln P(m)`.
    pub fn ln_p(&self, m: &[u64]) -> f64 {
        let mut x = [0.0; MAX_VARS];
        for (xi, &mi) in x.iter_mut().zip(m) {
            *xi = mi as f64;
        }
        self.poly.eval(&x[..self.n]).ln()
    }

    /// Largest `m[i] ≥ 1` keeping `m` inside, other coordinates as given; 0 if none.
    fn coord_max(&self, m: &mut [u64], i: usize) -> u64 {
        m[i] = 1;
        if !self.contains(m) {
            return 0;
        }
        let (mut lo, mut hi) = (1u64, 2u64);
        loop {
            m[i] = hi;
            if !self.contains(m) {
                break;
            }
            lo = hi;
            if hi >= 1 << 62 {
                return lo;
            }
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            m[i] = mid;
            if self.contains(m) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        m[i] = lo;
        lo
    }

    /// Per-coordinate maxima with every other coordinate at 1.
    pub fn box_bounds(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| {
                let mut m = vec![1u64; self.n];
                self.coord_max(&mut m, i)
            })
            .collect()
    }

    /// Calls `row(prefix, M)` for every prefix `(m_0..m_{n−2})` inside the region
    /// whose first coordinate lies in `first`, where `M ≥ 1` is the largest
    /// admissible last coordinate.
    fn rows(&self, first: std::ops::RangeInclusive<u64>, row: &mut dyn FnMut(&[u64], u64)) {
        let n = self.n;
        let mut m = vec![1u64; n];
        if n == 1 {
            if first.contains(&1) {
                let top = self.coord_max(&mut m, 0);
                if top > 0 {
                    row(&[], top);
                }
            }
            return;
        }
        for m0 in first {
            m.iter_mut().for_each(|x| *x = 1);
            m[0] = m0;
            if !self.contains(&m) {
                break;
            }
            self.descend(&mut m, 1, row);
        }
    }

    fn descend(&self, m: &mut Vec<u64>, i: usize, row: &mut dyn FnMut(&[u64], u64)) {
        let n = self.n;
        if i == n - 1 {
            let top = self.coord_max(m, i);
            if top > 0 {
                row(&m[..n - 1], top);
            }
            m[i] = 1;
            return;
        }
        m[i] = 1;
        loop {
            m[i + 1..].iter_mut().for_each(|x| *x = 1);
            if !self.contains(m) {
                break;
            }
            self.descend(m, i + 1, row);
            m[i] += 1;
        }
        m[i] = 1;
    }

    /// Contiguous first-coordinate ranges; depends only on the region.
    fn chunks(&self) -> Vec<std::ops::RangeInclusive<u64>> {
        if self.n == 1 {
            return vec![1..=1];
        }
        let mut m = vec![1u64; self.n];
        let top = self.coord_max(&mut m, 0);
        if top == 0 {
            return Vec::new();
        }
        let k = CHUNKS.min(top);
        let cut = |j: u64| (j as u128 * top as u128 / k as u128) as u64;
        (0..k).map(|j| (cut(j) + 1)..=cut(j + 1)).collect()
    }

    /// Number of lattice points, stopping early once it passes `cap`.
    pub fn points_up_to(&self, cap: u128) -> u128 {
        let mut total: u128 = 0;
        let mut rows: u128 = 0;
        for ch in self.chunks() {
            self.rows(ch, &mut |_, top| {
                rows += 1;
                total += top as u128;
            });
            if total > cap || rows > cap {
                return total.max(rows);
            }
        }
        total
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountOptions {
    /// refuse regions with more lattice points than this
    pub max_points: u128,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { max_points: 2_000_000_000 }
    }
}

/// `N(f;P;t)`; `exact` is present for integer-valued weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Count {
    pub value: f64,
    #[serde(serialize_with = "ser_opt_i128")]
    pub exact: Option<i128>,
    /// bound on the floating-point rounding error of `value`
    pub rounding_bound: f64,
    pub lattice_points: u64,
}

fn ser_opt_i128<S: serde::Serializer>(v: &Option<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// One-variable weight tables with prefix sums, for componentwise kinds.
#[derive(Debug, Clone)]
struct Components {
    values: Vec<f64>,
    prefix: Vec<f64>,
    int_prefix: Option<Vec<u64>>,
}

#[derive(Debug, Default)]
struct Acc {
    int: i128,
    real: NeumaierSum,
    abs: f64,
    points: u128,
}

impl Acc {
    fn merge(&mut self, o: &Acc) {
        self.int += o.int;
        self.real.merge(&o.real);
        self.abs += o.abs;
        self.points += o.points;
    }
}

/// Prepared counter for one `(f, P)` up to `t_max`: the sieve and weight tables
/// cover every coordinate that can occur.
#[derive(Debug, Clone)]
pub struct Counter {
    f: ArithmeticFunction,
    p: GenPoly,
    t_max: f64,
    sieve: Option<Sieve>,
    comps: Option<Components>,
    opts: CountOptions,
}

impl Counter {
    pub fn new(f: &ArithmeticFunction, p: &GenPoly, t_max: f64, opts: CountOptions) -> Result<Self> {
        if f.n() != p.n() {
            return Err(Error::DimensionMismatch { expected: p.n(), got: f.n() });
        }
        let region = Region::new(p, t_max)?;
        let limit = region.box_bounds().into_iter().max().unwrap_or(0).max(1);
        let needs_sieve = !matches!(f.kind(), Kind::Unit);
        let sieve = if needs_sieve { Some(Sieve::new(limit)?) } else { None };
        let comps = match (f.kind(), &sieve) {
            (Kind::Unit, _) | (_, None) => None,
            (_, Some(sv)) if f.is_componentwise() => {
                let values: Vec<f64> =
                    (0..=limit).map(|m| if m == 0 { 0.0 } else { f.component(m, sv) }).collect();
                let mut acc = NeumaierSum::default();
                let prefix = values
                    .iter()
                    .map(|v| {
                        acc.add(*v);
                        acc.value()
                    })
                    .collect();
                let int_prefix = f.is_integer_valued().then(|| {
                    let mut s = 0u64;
                    values
                        .iter()
                        .map(|v| {
                            s += *v as u64;
                            s
                        })
                        .collect()
                });
                Some(Components { values, prefix, int_prefix })
            }
            _ => None,
        };
        Ok(Self { f: f.clone(), p: p.clone(), t_max, sieve, comps, opts })
    }

    fn region(&self, t: f64) -> Result<Region> {
        if t > self.t_max {
            return Err(Error::Invalid(format!("t = {t} exceeds the prepared range {}", self.t_max)));
        }
        let r = Region::new(&self.p, t)?;
        let pts = r.points_up_to(self.opts.max_points);
        if pts > self.opts.max_points {
            return Err(Error::BudgetExceeded(format!(
                "more than {} lattice points below t = {t}",
                self.opts.max_points
            )));
        }
        Ok(r)
    }

    /// `f(m)` at one point; `buf` is scratch space for factorizations.
    fn weight(&self, m: &[u64], buf: &mut Vec<(u64, u32)>) -> f64 {
        if let Some(c) = &self.comps {
            return m.iter().map(|&x| c.values[x as usize]).product();
        }
        match (self.f.kind(), &self.sieve) {
            (Kind::Unit, _) => 1.0,
            (Kind::ProductKFree(k), Some(sv)) => {
                buf.clear();
                for &x in m {
                    sv.factor_into(x, buf);
                }
                buf.sort_unstable();
                let mut i = 0;
                while i < buf.len() {
                    let p = buf[i].0;
                    let mut v = 0;
                    while i < buf.len() && buf[i].0 == p {
                        v += buf[i].1;
                        i += 1;
                    }
                    if v >= *k {
                        return 0.0;
                    }
                }
                1.0
            }
            (_, Some(sv)) => self.f.eval(m, sv),
            (_, None) => unreachable!("sieve is built for every weighted kind"),
        }
    }

    fn row_sum(&self, prefix: &[u64], top: u64, acc: &mut Acc, m: &mut Vec<u64>, buf: &mut Vec<(u64, u32)>) {
        let exact = self.f.is_integer_valued();
        acc.points += top as u128;
        if matches!(self.f.kind(), Kind::Unit) {
            acc.int += top as i128;
            return;
        }
        if let Some(c) = &self.comps {
            let pre: f64 = prefix.iter().map(|&x| c.values[x as usize]).product();
            if pre == 0.0 {
                return;
            }
            match &c.int_prefix {
                Some(ip) if exact => acc.int += pre as i128 * ip[top as usize] as i128,
                _ => {
                    let v = pre * c.prefix[top as usize];
                    acc.real.add(v);
                    acc.abs += v.abs();
                }
            }
            return;
        }
        m.clear();
        m.extend_from_slice(prefix);
        m.push(0);
        let last = m.len() - 1;
        for x in 1..=top {
            m[last] = x;
            let w = self.weight(m, buf);
            if w == 0.0 {
                continue;
            }
            if exact {
                acc.int += w.round() as i128;
            } else {
                acc.real.add(w);
                acc.abs += w.abs();
            }
        }
    }

    /// `N(f;P;t)`.
    pub fn count(&self, t: f64) -> Result<Count> {
        let region = self.region(t)?;
        let parts: Vec<Acc> = region
            .chunks()
            .into_par_iter()
            .map(|ch| {
                let mut acc = Acc::default();
                let mut m = Vec::with_capacity(region.n);
                let mut buf = Vec::new();
                region.rows(ch, &mut |prefix, top| self.row_sum(prefix, top, &mut acc, &mut m, &mut buf));
                acc
            })
            .collect();
        let mut total = Acc::default();
        for a in &parts {
            total.merge(a);
        }
        let exact = self.f.is_integer_valued().then_some(total.int);
        let value = match exact {
            Some(v) => v as f64,
            None => total.real.value(),
        };
        let eps = f64::EPSILON;
        let rounding_bound = if exact.is_some() { 0.0 } else { 4.0 * (region.n as f64 + 2.0) * eps * total.abs };
        Ok(Count { value, exact, rounding_bound, lattice_points: total.points as u64 })
    }

    /// `(ln P(m), f(m))` for every `m` in the region with `f(m) ≠ 0`, in a
    /// fixed order.
    pub fn weighted_points(&self, t: f64) -> Result<Vec<(f64, f64)>> {
        let region = self.region(t)?;
        let parts: Vec<Vec<(f64, f64)>> = region
            .chunks()
            .into_par_iter()
            .map(|ch| {
                let mut out = Vec::new();
                let mut m: Vec<u64> = Vec::with_capacity(region.n);
                let mut buf = Vec::new();
                region.rows(ch, &mut |prefix, top| {
                    m.clear();
                    m.extend_from_slice(prefix);
                    m.push(0);
                    let last = m.len() - 1;
                    for x in 1..=top {
                        m[last] = x;
                        let w = self.weight(&m, &mut buf);
                        if w != 0.0 {
                            out.push((region.ln_p(&m), w));
                        }
                    }
                });
                out
            })
            .collect();
        Ok(parts.concat())
    }

    pub fn function(&self) -> &ArithmeticFunction {
        &self.f
    }

    pub fn polynomial(&self) -> &GenPoly {
        &self.p
    }
}

/// One-shot `N(f;P;t)`.
pub fn count(f: &ArithmeticFunction, p: &GenPoly, t: f64, opts: CountOptions) -> Result<Count> {
    Counter::new(f, p, t, opts)?.count(t)
}

/// Which hypotheses of the main-term theorem were checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypotheses {
    /// `c ∈ con*(supp P)`
    pub c_in_polar_cone_of_support: bool,
    /// `1 ∈ con*(I_c)`
    pub diagonal_in_polar_cone: bool,
    /// `rank I_c = n`, which makes the factorization hypothesis automatic
    pub full_rank_directions: bool,
    pub h_nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticPrediction {
    pub iota: String,
    pub iota_value: f64,
    pub rho: usize,
    /// leading coefficient `C(f;P) = H·d^ρ·A₀(T_c;P)` of `Z` at `s = ι`
    pub leading: f64,
    pub c0: f64,
    pub c0_error: f64,
    pub h_at_zero: f64,
    pub d: String,
    pub a0: ConstantEstimate,
    pub hypotheses: Hypotheses,
    pub conditional_on: Option<String>,
    #[serde(skip)]
    pub descriptor: FiniteTypeDescriptor,
}

impl AsymptoticPrediction {
    /// `C₀ t^ι (log t)^{ρ−1}`.
    pub fn main_term(&self, t: f64) -> f64 {
        self.c0 * t.powf(self.iota_value) * t.ln().powi(self.rho as i32 - 1)
    }
}

/// `inf{|x| : x ∈ Σ_f, x ∈ con(supp P)}` by linear programming, `None` if empty.
pub fn iota_infimum(support: &[Vec<u32>], p: &GenPoly) -> Option<Rat> {
    let gammas = p.support();
    let k = support.len();
    // variables: λ ∈ R₊^r, slack ∈ R₊^k; Σ_j λ_j⟨ν,γ_j⟩ − slack_ν = 1
    let mut a = Vec::with_capacity(k);
    for (row_idx, nu) in support.iter().enumerate() {
        let nu_r: Vec<Rat> = nu.iter().map(|&v| rat::int(v as i64)).collect();
        let mut row: Vec<Rat> = gammas.iter().map(|g| rat::dot(&nu_r, g)).collect();
        row.extend((0..k).map(|j| if j == row_idx { -rat::int(1) } else { Rat::zero() }));
        a.push(row);
    }
    let b = vec![rat::int(1); k];
    let mut c: Vec<Rat> = gammas.iter().map(|g| -rat::l1(g)).collect();
    c.extend(std::iter::repeat(Rat::zero()).take(k));
    match lp::maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => Some(-value),
        _ => None,
    }
}

/// Main term of `N(f;P;t)` for homogeneous `P`.
pub fn predict(
    f: &ArithmeticFunction,
    p: &GenPoly,
    hopts: &mut HOptions,
    lopts: &LimitOptions,
) -> Result<AsymptoticPrediction> {
    let n = p.n();
    if f.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: f.n() });
    }
    if !p.is_homogeneous() {
        return Err(Error::PredictionRefused("P must be homogeneous".into()));
    }
    if !p.depends_on_all() {
        return Err(Error::PredictionRefused("P must depend on every variable".into()));
    }
    let desc = finite_type_descriptor(f, hopts)?;
    let c = &desc.c_exact;
    let supp = p.support();
    if cone_membership(c, &supp, true).is_none() {
        let msg = match iota_infimum(&desc.support, p) {
            Some(i) => format!(
                "c = ({}) is not in con*(supp P); only the upper-bound exponent ι(f;P) = {} is available",
                desc.c.join(", "),
                rat::render(&i)
            ),
            None => "Σ_f ∩ con(supp P) is empty".to_string(),
        };
        return Err(Error::PredictionRefused(msg));
    }
    let ic = desc.polar_type.directions();
    let hypotheses = Hypotheses {
        c_in_polar_cone_of_support: true,
        diagonal_in_polar_cone: cone_membership(&rat::ones(n), ic, true).is_some(),
        full_rank_directions: linalg::rank(ic) == n,
        h_nonzero: desc.h_at_zero != 0.0,
    };
    let rho = mixed_exponents(&desc.polar_type, p)?.rho0_tp;
    let a0 = mixed_volume_constant(&desc.polar_type, p, lopts)?;
    let d = p.degree();
    let df = rat::to_f64(&d);
    let iota = rat::to_f64(&desc.iota_exact);
    let fact: f64 = (1..rho).map(|k| k as f64).product();
    let leading = desc.h_at_zero * df.powi(rho as i32) * a0.value;
    let c0 = leading / (iota * fact);
    let rel = a0.error_estimate / a0.value.abs() + desc.h_error / desc.h_at_zero.abs();
    Ok(AsymptoticPrediction {
        iota: desc.iota.clone(),
        iota_value: iota,
        rho,
        leading,
        c0,
        c0_error: c0.abs() * rel,
        h_at_zero: desc.h_at_zero,
        d: rat::render(&d),
        a0,
        hypotheses,
        conditional_on: desc.conditional_on.clone(),
        descriptor: desc,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub t_grid: Vec<f64>,
    pub counts: Vec<Count>,
    pub predictions: Vec<f64>,
    pub ratios: Vec<f64>,
    /// least-squares slope of `log N` against `log t` over the upper half of the grid
    pub fitted_exponent: Option<f64>,
    pub verdict: Option<bool>,
    /// seconds per grid point; left out of serialized reports so they stay reproducible
    #[serde(skip)]
    pub wall_times: Vec<f64>,
}

/// Counts along `grid` against the prediction. `tolerance` bounds `|ratio − 1|`
/// at the last grid point.
pub fn convergence_report(
    counter: &Counter,
    pred: &AsymptoticPrediction,
    grid: &[f64],
    tolerance: Option<f64>,
) -> Result<CountReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("grid must be nonempty and increasing".into()));
    }
    let mut counts = Vec::with_capacity(grid.len());
    let mut wall_times = Vec::with_capacity(grid.len());
    for &t in grid {
        let start = Instant::now();
        counts.push(counter.count(t)?);
        wall_times.push(start.elapsed().as_secs_f64());
    }
    let predictions: Vec<f64> = grid.iter().map(|&t| pred.main_term(t)).collect();
    let ratios: Vec<f64> = counts.iter().zip(&predictions).map(|(c, p)| c.value / p).collect();
    let lo = grid.len() / 2;
    let pts: Vec<(f64, f64)> = grid[lo..]
        .iter()
        .zip(&counts[lo..])
        .filter(|(_, c)| c.value > 0.0)
        .map(|(t, c)| (t.ln(), c.value.ln()))
        .collect();
    let fitted_exponent = (pts.len() >= 2).then(|| {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    });
    let verdict = tolerance.map(|tol| (ratios.last().expect("nonempty grid") - 1.0).abs() <= tol);
    Ok(CountReport { t_grid: grid.to_vec(), counts, predictions, ratios, fitted_exponent, verdict, wall_times })
}
