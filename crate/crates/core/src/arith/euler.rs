//! Euler products `∏_p L(1/p)` for regularized local factors
//! `L(x) = 1 + Σ_e a_e x^e` with rational exponents `e > 1`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::sieve;
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate_with_breaks, QuadOptions};
use crate::numeric::sum::NeumaierSum;
use crate::rat::{self, Rat};

/// `1 + Σ a_e x^e`, keyed by the exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFactor {
    terms: BTreeMap<Rat, f64>,
}

impl LocalFactor {
    /// Builds `(1−x)^{u} · Σ_ν w_ν x^{e_ν}` and checks that it is `1 + O(x^{e})`, `e > 1`.
    pub fn regularized(weights: &[(Rat, f64)], u: u32) -> Result<Self> {
        let mut raw: BTreeMap<Rat, f64> = BTreeMap::new();
        for (e, w) in weights {
            if e.is_negative() {
                return Err(Error::Invalid("negative exponent in local factor".into()));
            }
            *raw.entry(e.clone()).or_default() += w;
        }
        let mut binom = 1.0f64;
        let mut terms: BTreeMap<Rat, f64> = BTreeMap::new();
        for j in 0..=u {
            let c = if j % 2 == 0 { binom } else { -binom };
            for (e, w) in &raw {
                *terms.entry(e + rat::int(j as i64)).or_default() += c * w;
            }
            binom = binom * (u - j) as f64 / (j + 1) as f64;
        }
        let scale = terms.values().fold(0.0f64, |m, a| m.max(a.abs())).max(1.0);
        terms.retain(|_, a| a.abs() > 1e-13 * scale);
        let constant = terms.remove(&Rat::zero()).unwrap_or(0.0);
        if (constant - 1.0).abs() > 1e-12 {
            return Err(Error::NonConvergentProduct(format!("local factor starts with {constant}, not 1")));
        }
        if let Some((e, a)) = terms.iter().find(|(e, _)| **e <= Rat::one()) {
            return Err(Error::NonConvergentProduct(format!(
                "term {a} x^{} survives the regularization",
                rat::render(e)
            )));
        }
        Ok(Self { terms })
    }

    /// `1 + Σ a_e x^e` given directly; exponents must exceed 1.
    pub fn from_terms(terms: &[(Rat, f64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, a) in terms {
            if *e <= Rat::one() {
                return Err(Error::NonConvergentProduct(format!("exponent {} ≤ 1", rat::render(e))));
            }
            *map.entry(e.clone()).or_insert(0.0) += a;
        }
        Ok(Self { terms: map })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, f64)> {
        self.terms.iter().map(|(e, a)| (e, *a))
    }

    /// `L(1/p) − 1`.
    pub fn excess_at_prime(&self, p: f64) -> f64 {
        let lp = p.ln();
        self.terms.iter().map(|(e, a)| a * (-rat::to_f64(e) * lp).exp()).sum()
    }

    fn leading_exponent(&self) -> Option<f64> {
        self.terms.keys().next().map(rat::to_f64)
    }
}

/// Lazily extended list of primes, optionally persisted in a cache directory.
#[derive(Debug, Default)]
pub struct PrimeSource {
    cache_dir: Option<PathBuf>,
    limit: u64,
    primes: Vec<u32>,
}

impl PrimeSource {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Self { cache_dir, limit: 0, primes: Vec::new() }
    }

    pub fn up_to(&mut self, limit: u64) -> Result<&[u32]> {
        if limit > self.limit {
            self.primes = match &self.cache_dir {
                Some(dir) => sieve::cached_primes(dir, limit)?,
                None => sieve::primes_up_to(limit),
            };
            self.limit = limit;
        }
        let end = self.primes.partition_point(|&p| p as u64 <= limit);
        Ok(&self.primes[..end])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerProduct {
    pub value: f64,
    /// bound on `|value − ∏_p L(1/p)|`
    pub tail_bound: f64,
    pub pmax: u64,
    pub primes: usize,
}

/// Cutoffs tried in turn until the tail bound meets the tolerance.
pub const PMAX_LADDER: [u64; 5] = [10_000, 100_000, 1_000_000, 10_000_000, 100_000_000];

/// `∏_{p ≤ P} L(1/p)` in log space.
pub fn partial_log(factor: &LocalFactor, primes: &[u32]) -> f64 {
    let mut s = NeumaierSum::default();
    for &p in primes {
        s.add(factor.excess_at_prime(p as f64).ln_1p());
    }
    s.value()
}

fn pi_lower(x: f64) -> f64 {
    let l = x.ln();
    if x >= 599.0 {
        x / l * (1.0 + 1.0 / l)
    } else if x >= 17.0 {
        x / l
    } else {
        0.0
    }
}

fn pi_upper(x: f64) -> f64 {
    let l = x.ln();
    if x >= 355_991.0 {
        x / l * (1.0 + 1.0 / l + 2.51 / (l * l))
    } else {
        1.25506 * x / l
    }
}

/// Lower and upper bounds for `Σ_{p > P} p^{−e}` given `π(P)` exactly.
pub fn prime_tail_bounds(p: f64, pi_p: f64, e: f64) -> (f64, f64) {
    // Σ_{p>P} p^{−e} = −π(P)P^{−e} + e ∫_P^∞ π(t) t^{−e−1} dt, integrated in u = ln t
    let opts = QuadOptions::new(0.0, 1e-12);
    let lo = p.ln();
    let hi = lo + 60.0 / (e - 1.0);
    let breaks = [599f64.ln(), 355_991f64.ln()];
    let int = |bound: fn(f64) -> f64| {
        integrate_with_breaks(|u: f64| bound(u.exp()) * (-e * u).exp(), lo, hi, &breaks, &opts).value
    };
    let head = -pi_p * p.powf(-e);
    (head + e * int(pi_lower), head + e * int(pi_upper))
}

/// Truncated product with a tail estimate from prime-counting bounds.
pub fn euler_product(factor: &LocalFactor, tol: f64, primes: &mut PrimeSource) -> Result<EulerProduct> {
    let Some(e0) = factor.leading_exponent() else {
        return Ok(EulerProduct { value: 1.0, tail_bound: 0.0, pmax: 0, primes: 0 });
    };
    let total_abs: f64 = factor.terms().map(|(_, a)| a.abs()).sum();
    let mut last = None;
    for &pmax in &PMAX_LADDER {
        let ps = primes.up_to(pmax)?;
        let head = partial_log(factor, ps);
        let pf = pmax as f64;
        let pi_p = ps.len() as f64;
        let mut mid = 0.0;
        let mut half = 0.0;
        for (e, a) in factor.terms() {
            let (l, u) = prime_tail_bounds(pf, pi_p, rat::to_f64(e));
            mid += a * 0.5 * (l + u);
            half += a.abs() * 0.5 * (u - l);
        }
        // ln(1+y) − y over p > P, with |y| ≤ A·p^{−e0}
        let y_max = total_abs * pf.powf(-e0);
        let second = if y_max < 0.5 {
            total_abs * total_abs / (2.0 * (1.0 - y_max)) * pf.powf(1.0 - 2.0 * e0) / (2.0 * e0 - 1.0)
        } else {
            f64::INFINITY
        };
        let log_value = head + mid;
        let value = log_value.exp();
        let log_err = half + second + 1e-16 * ps.len() as f64;
        let tail_bound = value * (log_err.exp() - 1.0);
        let out = EulerProduct { value, tail_bound, pmax, primes: ps.len() };
        if tail_bound <= tol * value.abs() {
            return Ok(out);
        }
        last = Some(out);
    }
    last.ok_or_else(|| Error::NonConvergentProduct("empty cutoff ladder".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::special::zeta;
    use crate::rat::int;

    #[test]
    fn regularization_cancels_first_order() {
        // D_2, n = 2: (1−x)²(1+2x) = 1 − 3x² + 2x³
        let f = LocalFactor::regularized(&[(int(0), 1.0), (int(1), 2.0)], 2).unwrap();
        let t: Vec<(Rat, f64)> = f.terms().map(|(e, a)| (e.clone(), a)).collect();
        assert_eq!(t, vec![(int(2), -3.0), (int(3), 2.0)]);
        assert!(LocalFactor::regularized(&[(int(0), 1.0), (int(1), 2.0)], 1).is_err());
        assert!(LocalFactor::regularized(&[(int(0), 2.0)], 0).is_err());
    }

    #[test]
    fn tail_bounds_bracket_direct_sum() {
        let primes = sieve::primes_up_to(2_000_000);
        for e in [2.0, 3.0, 1.5] {
            let p = 10_000.0;
            let pi_p = primes.partition_point(|&q| q as f64 <= p) as f64;
            let (l, u) = prime_tail_bounds(p, pi_p, e);
            let direct: f64 = primes.iter().filter(|&&q| q as f64 > p).map(|&q| (q as f64).powf(-e)).sum();
            // remainder beyond 2·10^6 is below the integral bound of x^{-e}/ln x
            let rest = (2e6f64).powf(1.0 - e) / ((e - 1.0) * 2e6f64.ln());
            assert!(l <= direct + rest && direct <= u, "e = {e}: {l} {direct} {u}");
        }
    }

    #[test]
    fn inverse_zeta() {
        let mut ps = PrimeSource::new(None);
        for k in [2, 3, 4] {
            let f = LocalFactor::from_terms(&[(int(k), -1.0)]).unwrap();
            let r = euler_product(&f, 1e-10, &mut ps).unwrap();
            let expect = 1.0 / zeta(k as f64);
            assert!((r.value - expect).abs() < 1e-9, "k = {k}: {} vs {expect}", r.value);
            assert!((r.value - expect).abs() <= r.tail_bound + 1e-13, "bound not honest at k = {k}");
        }
    }

    #[test]
    fn truncated_product_matches_direct_multiplication() {
        let f = LocalFactor::regularized(&[(int(0), 1.0), (int(1), 2.0)], 2).unwrap();
        let primes = sieve::primes_up_to(1000);
        let direct: f64 = primes.iter().map(|&p| {
            let x = 1.0 / p as f64;
            (1.0 - x).powi(2) * (1.0 + 2.0 * x)
        }).product();
        assert!((partial_log(&f, &primes).exp() - direct).abs() < 1e-14);
    }
}
