//! Prime sieves: a smallest-prime-factor table for factorization and a
//! segmented sieve of Eratosthenes for long prime lists.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Largest bound accepted for the smallest-prime-factor table (4 bytes per entry).
pub const MAX_SPF: u64 = 100_000_000;

/// Smallest prime factor of every integer up to `limit`.
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > MAX_SPF {
            return Err(Error::BudgetExceeded(format!("factor table up to {limit} exceeds {MAX_SPF}")));
        }
        let limit = limit.max(1) as usize;
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(Self { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn is_prime(&self, m: u64) -> bool {
        m >= 2 && self.spf[m as usize] as u64 == m
    }

    /// `(p, v_p(m))` in increasing order of `p`.
    pub fn factor(&self, mut m: u64) -> Vec<(u64, u32)> {
        assert!(m <= self.limit(), "{m} is beyond the sieve limit {}", self.limit());
        let mut out: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut v = 0;
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            out.push((p, v));
        }
        out
    }

    /// Appends `(p, v_p(m))` to `out` without allocating.
    pub fn factor_into(&self, mut m: u64, out: &mut Vec<(u64, u32)>) {
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut v = 0;
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            out.push((p, v));
        }
    }

    /// Largest prime valuation of `m` (0 for `m = 1`).
    pub fn max_valuation(&self, mut m: u64) -> u32 {
        let mut best = 0;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut v = 0;
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            best = best.max(v);
        }
        best
    }

    /// `Some(p)` when `m = p^a` with `a ≥ 1`.
    pub fn prime_power_base(&self, mut m: u64) -> Option<u64> {
        if m < 2 {
            return None;
        }
        let p = self.spf[m as usize] as u64;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }
}

/// All primes `≤ limit` by a segmented sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u32> {
    assert!(limit < u32::MAX as u64);
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut small = vec![true; root as usize + 1];
    let mut base: Vec<u64> = Vec::new();
    for i in 2..=root {
        if small[i as usize] {
            base.push(i);
            let mut j = i * i;
            while j <= root {
                small[j as usize] = false;
                j += i;
            }
        }
    }
    const SEGMENT: u64 = 1 << 18;
    let mut out: Vec<u32> = Vec::with_capacity((1.3 * limit as f64 / (limit as f64).ln()) as usize + 16);
    let mut seg = vec![true; SEGMENT as usize];
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        seg.iter_mut().for_each(|x| *x = true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut j = (lo.div_ceil(p) * p).max(p * p);
            while j <= hi {
                seg[(j - lo) as usize] = false;
                j += p;
            }
        }
        for k in lo..=hi {
            if seg[(k - lo) as usize] {
                out.push(k as u32);
            }
        }
        lo = hi + 1;
    }
    out
}

const MAGIC: &[u8; 8] = b"MZLPRM01";

/// Loads the prime list for `limit` from `dir/primes.bin`, sieving and
/// rewriting the file when it is missing, stale or too short.
pub fn cached_primes(dir: &Path, limit: u64) -> Result<Vec<u32>> {
    let path = dir.join("primes.bin");
    if let Ok(bytes) = fs::read(&path) {
        if bytes.len() >= 16 && &bytes[..8] == MAGIC {
            let stored = u64::from_le_bytes(bytes[8..16].try_into().expect("8 bytes"));
            if stored >= limit && (bytes.len() - 16) % 4 == 0 {
                return Ok(bytes[16..]
                    .chunks_exact(4)
                    .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
                    .take_while(|&p| p as u64 <= limit)
                    .collect());
            }
        }
    }
    let primes = primes_up_to(limit);
    fs::create_dir_all(dir)?;
    let mut bytes = Vec::with_capacity(16 + 4 * primes.len());
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&limit.to_le_bytes());
    for p in &primes {
        bytes.extend_from_slice(&p.to_le_bytes());
    }
    let tmp = path.with_extension("bin.tmp");
    fs::write(&tmp, &bytes)?;
    fs::rename(&tmp, &path)?;
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_prime(m: u64) -> bool {
        m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
    }

    #[test]
    fn segmented_matches_trial_division() {
        let primes = primes_up_to(300_000);
        let expect: Vec<u32> = (0..=300_000u64).filter(|&m| trial_division_prime(m)).map(|m| m as u32).collect();
        assert_eq!(primes, expect);
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn factorization() {
        let s = Sieve::new(1000).unwrap();
        assert_eq!(s.factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(s.factor(1), vec![]);
        assert_eq!(s.max_valuation(72), 3);
        assert_eq!(s.prime_power_base(243), Some(3));
        assert_eq!(s.prime_power_base(6), None);
        for m in 2..=1000 {
            assert_eq!(s.is_prime(m), trial_division_prime(m));
            let back: u64 = s.factor(m).iter().map(|&(p, v)| p.pow(v)).product();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let a = cached_primes(dir.path(), 10_000).unwrap();
        let b = cached_primes(dir.path(), 5_000).unwrap();
        assert_eq!(a.len(), 1229);
        assert_eq!(b.len(), 669);
        let c = cached_primes(dir.path(), 20_000).unwrap();
        assert_eq!(c.len(), 2262);
    }
}
