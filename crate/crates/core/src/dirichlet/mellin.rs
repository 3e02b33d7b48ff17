//! `Γ(s)/(Σ w_k)^s` against its vertical-line Mellin–Barnes representation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::quad::{integrate_with_breaks, QuadOptions};
use crate::numeric::special::{gamma, ln_gamma_complex};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MellinCheck {
    pub r: usize,
    pub w: Vec<f64>,
    pub rho: Vec<f64>,
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub quad_error: f64,
    /// truncation height of every `Im z_k`
    pub height: f64,
    pub truncation_bound: f64,
}

struct Integrand<'a> {
    s: f64,
    ln_w: Vec<f64>,
    rho: &'a [f64],
}

impl Integrand<'_> {
    fn value(&self, t: &[f64]) -> Complex64 {
        let mut z_sum = Complex64::new(0.0, 0.0);
        let mut ln_f = Complex64::new(0.0, 0.0);
        for (k, (&rho, &tk)) in self.rho.iter().zip(t).enumerate() {
            let z = Complex64::new(rho, tk);
            z_sum += z;
            ln_f += ln_gamma_complex(z) - z * self.ln_w[k + 1];
        }
        let head = Complex64::new(self.s, 0.0) - z_sum;
        ln_f += ln_gamma_complex(head) - head * self.ln_w[0];
        ln_f.exp()
    }
}

/// Compares both sides for `r = 1, 2`; `w` has `r + 1` entries and `rho` has `r`.
pub fn mellin_identity_check(w: &[f64], rho: &[f64], s: f64, rel: f64) -> Result<MellinCheck> {
    let r = rho.len();
    if !(1..=2).contains(&r) || w.len() != r + 1 {
        return Err(Error::Domain(format!("need r ∈ {{1,2}} with r+1 weights; got {} weights, {r} abscissae", w.len())));
    }
    if w.iter().any(|x| !(x.is_finite() && *x > 0.0)) || rho.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::Domain("weights and abscissae must be positive".into()));
    }
    let rho_sum: f64 = rho.iter().sum();
    if !(s > rho_sum) {
        return Err(Error::Domain(format!("s = {s} must exceed Σρ = {rho_sum}")));
    }
    let f = Integrand { s, ln_w: w.iter().map(|x| x.ln()).collect(), rho };
    let height = 40.0 + 10.0 * s.abs();

    // |F| on the boundary of the box, where the Γ factors have decayed like e^{−π|t|/2}
    let corners: Vec<Vec<f64>> = match r {
        1 => vec![vec![height], vec![-height]],
        _ => {
            let mut v = Vec::new();
            for a in [-height, 0.0, height] {
                for b in [-height, 0.0, height] {
                    if a.abs() == height || b.abs() == height {
                        v.push(vec![a, b]);
                    }
                }
            }
            v
        }
    };
    let edge = corners.iter().map(|t| f.value(t).norm()).fold(0.0f64, f64::max);
    let norm = (2.0 * std::f64::consts::PI).powi(r as i32);
    let truncation_bound = 10.0 * edge * (2.0 * height).powi(r as i32 - 1) / norm;
    if truncation_bound > 1e-10 {
        return Err(Error::Quadrature(format!("truncation at |Im z| = {height} leaves {truncation_bound:.2e}")));
    }

    let breaks = [-8.0, -2.0, 0.0, 2.0, 8.0];
    let opts = QuadOptions::new(1e-15, rel).with_max_intervals(4000);
    let mut failures = 0usize;
    let (value, error) = if r == 1 {
        let q = integrate_with_breaks(|t| f.value(&[t]).re, -height, height, &breaks, &opts);
        failures += usize::from(!q.converged);
        (q.value, q.error)
    } else {
        let mut inner_err = 0.0f64;
        let outer = integrate_with_breaks(
            |t1| {
                let mut b = breaks.to_vec();
                b.extend(breaks.iter().map(|x| x - t1));
                let q = integrate_with_breaks(|t2| f.value(&[t1, t2]).re, -height, height, &b, &opts);
                failures += usize::from(!q.converged);
                inner_err = inner_err.max(q.error);
                q.value
            },
            -height,
            height,
            &breaks,
            &opts,
        );
        failures += usize::from(!outer.converged);
        (outer.value, outer.error + 2.0 * height * inner_err)
    };
    if failures > 0 {
        return Err(Error::Quadrature(format!("{failures} vertical-line integrals did not converge")));
    }
    let rhs = value / norm;
    let lhs = gamma(s) / w.iter().sum::<f64>().powf(s);
    Ok(MellinCheck {
        r,
        w: w.to_vec(),
        rho: rho.to_vec(),
        s,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        quad_error: error / norm,
        height,
        truncation_bound,
    })
}
