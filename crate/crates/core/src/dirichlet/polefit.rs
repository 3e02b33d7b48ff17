//! Pole order and leading coefficient from one-sided values on the real axis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::richardson::{geometric_ladder, neville_diagonal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleFitOptions {
    /// first offset `s − a`; the ladder is `h·2^{−j}`
    pub h: f64,
    pub levels: usize,
    /// relative change allowed in the last extrapolation step
    pub stability: f64,
    /// growth required of `(s−a)^{q−1}E(s)` between the first and last rung
    pub divergence: f64,
}

impl Default for PoleFitOptions {
    fn default() -> Self {
        Self { h: 0.25, levels: 6, stability: 0.005, divergence: 10.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleFit {
    pub location: f64,
    pub order: u32,
    pub leading: f64,
    /// last-step change of the accepted extrapolation
    pub leading_error: f64,
    /// relative last-step change for every tried order `1..=q`
    pub residuals: Vec<f64>,
    /// `|g_{q−1}(last)| / |g_{q−1}(first)|`
    pub growth: f64,
    pub offsets: Vec<f64>,
    pub values: Vec<f64>,
}

/// Finds the smallest `q ≤ q_max` for which `(s−a)^q E(s)` has a stable,
/// nonzero limit as `s → a⁺` while `(s−a)^{q−1} E(s)` blows up.
pub fn pole_fit(
    eval: &mut dyn FnMut(f64) -> Result<f64>,
    a: f64,
    q_max: u32,
    opts: &PoleFitOptions,
) -> Result<PoleFit> {
    if q_max == 0 || opts.levels < 2 || opts.h <= 0.0 {
        return Err(Error::Invalid("pole_fit needs q_max ≥ 1, levels ≥ 2 and h > 0".into()));
    }
    let offsets = geometric_ladder(opts.h, opts.levels);
    let values = offsets.iter().map(|&h| eval(a + h)).collect::<Result<Vec<f64>>>()?;
    let scaled = |q: u32| -> Vec<f64> { offsets.iter().zip(&values).map(|(h, e)| h.powi(q as i32) * e).collect() };
    let last = offsets.len() - 1;

    let mut residuals = Vec::new();
    let mut notes = Vec::new();
    for q in 1..=q_max {
        let g = scaled(q);
        let diag = neville_diagonal(&offsets, &g);
        let limit = diag[last];
        let step = (limit - diag[last - 1]).abs();
        let rel = step / limit.abs();
        residuals.push(rel);
        let prev = scaled(q - 1);
        let growth = (prev[last] / prev[0]).abs();
        let scale = g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let nonzero = limit.is_finite() && limit.abs() > 1e-9 * scale;
        if nonzero && rel < opts.stability && growth > opts.divergence {
            return Ok(PoleFit {
                location: a,
                order: q,
                leading: limit,
                leading_error: step,
                residuals,
                growth,
                offsets,
                values,
            });
        }
        notes.push(format!("q={q}: limit {limit:.6e}, step {rel:.2e}, growth {growth:.2}"));
    }
    Err(Error::NoStableOrder { q_max, detail: notes.join("; ") })
}
