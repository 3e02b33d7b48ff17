//! `Φ(P;σ;cut) = ∫_{t ≥ 0, ln P(e^t) > cut} e^{|t|} P(e^t)^{−σ} dt`, computed in
//! log-radial coordinates `t = rω` with `ω` on the standard simplex.
//! With no cut this is `Y(P;σ) = ∫_{[1,∞)^n} P(x)^{−σ} dx`.

use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, integrate_with_breaks, QuadOptions};
use crate::numeric::special::upper_gamma_int;
use crate::numeric::Estimate;
use crate::polyring::GenPoly;

/// Relative size below which non-dominant terms are ignored in the tail.
const NEGLIGIBLE: f64 = -37.0;
const MAX_SEGMENTS: usize = 200;

#[derive(Debug, Clone)]
pub struct LogRadial {
    n: usize,
    ln_b: Vec<f64>,
    gammas: Vec<Vec<f64>>,
}

impl LogRadial {
    pub fn new(p: &GenPoly) -> Self {
        let (ln_b, gammas) = p
            .terms()
            .map(|(e, b)| (b.ln(), e.coords().iter().map(crate::rat::to_f64).collect::<Vec<f64>>()))
            .unzip();
        Self { n: p.n(), ln_b, gammas }
    }

    fn slopes(&self, w: &[f64]) -> Vec<f64> {
        self.gammas.iter().map(|g| g.iter().zip(w).map(|(a, b)| a * b).sum()).collect()
    }

    /// `L(r) = ln Σ b_k e^{r g_k}` and `L'(r)`.
    fn lse(&self, g: &[f64], r: f64) -> (f64, f64) {
        let m = self.ln_b.iter().zip(g).map(|(lb, gk)| lb + r * gk).fold(f64::NEG_INFINITY, f64::max);
        let mut s = 0.0;
        let mut d = 0.0;
        for (lb, gk) in self.ln_b.iter().zip(g) {
            let e = (lb + r * gk - m).exp();
            s += e;
            d += e * gk;
        }
        (m + s.ln(), d / s)
    }

    /// Radial integral `∫_{r0}^∞ r^{n−1} e^{r − σL(r)} dr` for one direction.
    fn radial(&self, g: &[f64], sigma: f64, cut: Option<f64>, rel: f64) -> Result<(f64, f64)> {
        let n = self.n as i32;
        let h = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lambda = sigma * h - 1.0;
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("integral diverges in direction {g:?} (σ·h = {})", sigma * h)));
        }
        let r0 = match cut {
            Some(c) if self.lse(g, 0.0).0 < c => {
                let (mut lo, mut hi) = (0.0, 1.0);
                while self.lse(g, hi).0 < c {
                    lo = hi;
                    hi *= 2.0;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.lse(g, mid).0 < c {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
            _ => 0.0,
        };
        let log_f = |r: f64| {
            let lead = if n == 1 { 0.0 } else { f64::from(n - 1) * r.ln() };
            lead + r - sigma * self.lse(g, r).0
        };
        let f = |r: f64| if r <= 0.0 && n > 1 { 0.0 } else { log_f(r).exp() };
        // dominant terms for the closed-form tail
        let tie = 1e-12 * (1.0 + h.abs());
        let dom: Vec<usize> = (0..g.len()).filter(|&k| g[k] >= h - tie).collect();
        let ln_bdom = {
            let m = dom.iter().map(|&k| self.ln_b[k]).fold(f64::NEG_INFINITY, f64::max);
            m + dom.iter().map(|&k| (self.ln_b[k] - m).exp()).sum::<f64>().ln()
        };
        let mut total = 0.0f64;
        let mut err = 0.0;
        let mut a = r0;
        let mut width = (1.0 / lambda).min(1.0);
        for _ in 0..MAX_SEGMENTS {
            let b = a + width;
            let opts = QuadOptions::new((rel * total.abs()).max(1e-300), rel);
            let seg = integrate(f, a, b, &opts);
            total += seg.value;
            err += seg.error;
            let rest = (0..g.len())
                .filter(|k| !dom.contains(k))
                .map(|k| self.ln_b[k] + b * g[k])
                .fold(f64::NEG_INFINITY, f64::max);
            if rest - (ln_bdom + b * h) < NEGLIGIBLE {
                let tail = (-sigma * ln_bdom).exp() * upper_gamma_int(self.n as u32, lambda * b) / lambda.powi(n);
                return Ok((total + tail, err + 1e-15 * tail.abs()));
            }
            let mu = sigma * self.lse(g, b).1 - 1.0;
            if mu > 0.0 {
                // L convex: ln f(r) ≤ ln f(b) − μ(r−b) + (n−1)ln(r/b)
                let mut bound = 0.0;
                let mut c = 1.0;
                for k in 0..n {
                    bound += c / (b.powi(k) * mu.powi(k + 1));
                    c *= f64::from(n - 1 - k);
                }
                let bound = f(b) * bound;
                if bound <= 0.1 * rel * total.abs() {
                    return Ok((total, err + bound));
                }
            }
            a = b;
            width *= 2.0;
        }
        Err(Error::Quadrature(format!("radial integral in direction {g:?} did not settle")))
    }

    /// Values of the coordinate integrated at `level` (earlier ones fixed) where
    /// two dominant slopes tie; the integrand has kinks there.
    fn kinks(&self, level: usize, prefix: &[f64], mass: f64) -> Vec<f64> {
        let n = self.n;
        let k = n - level;
        let terms = self.gammas.len();
        // candidate equations over the remaining coordinates
        let mut eqs: Vec<(Vec<f64>, f64, Option<(usize, usize)>)> = Vec::new();
        for a in 0..terms {
            for b in a + 1..terms {
                let coef: Vec<f64> = (level..n).map(|i| self.gammas[a][i] - self.gammas[b][i]).collect();
                if coef.iter().all(|c| *c == 0.0) {
                    continue;
                }
                let rhs: f64 = -(0..level).map(|i| (self.gammas[a][i] - self.gammas[b][i]) * prefix[i]).sum::<f64>();
                eqs.push((coef, rhs, Some((a, b))));
            }
        }
        for i in 0..k {
            let mut coef = vec![0.0; k];
            coef[i] = 1.0;
            eqs.push((coef, 0.0, None));
        }
        let mut out = Vec::new();
        let mut pick: Vec<usize> = Vec::with_capacity(k - 1);
        fn combos(
            start: usize,
            need: usize,
            total: usize,
            pick: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize]),
        ) {
            if need == 0 {
                visit(pick);
                return;
            }
            for i in start..total {
                pick.push(i);
                combos(i + 1, need - 1, total, pick, visit);
                pick.pop();
            }
        }
        let mut visit = |chosen: &[usize]| {
            if chosen.iter().all(|&c| eqs[c].2.is_none()) {
                return;
            }
            let mut m: Vec<Vec<f64>> = chosen.iter().map(|&c| {
                let mut row = eqs[c].0.clone();
                row.push(eqs[c].1);
                row
            }).collect();
            let mut sum_row = vec![1.0; k];
            sum_row.push(mass);
            m.push(sum_row);
            let Some(w) = solve_dense(m) else { return };
            if w.iter().any(|x| *x < -1e-12 * mass) {
                return;
            }
            let mut omega = prefix.to_vec();
            omega.extend(w.iter().map(|x| x.max(0.0)));
            let g = self.slopes(&omega);
            let h = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let tol = 1e-9 * (1.0 + h.abs());
            let dominant = chosen.iter().all(|&c| match eqs[c].2 {
                Some((a, b)) => g[a] >= h - tol && g[b] >= h - tol,
                None => true,
            });
            if dominant && w[0] > 1e-12 * mass && w[0] < mass * (1.0 - 1e-12) {
                out.push(w[0]);
            }
        };
        combos(0, k - 1, eqs.len(), &mut pick, &mut visit);
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * mass);
        out
    }

    fn level(&self, level: usize, prefix: &mut Vec<f64>, mass: f64, sigma: f64, cut: Option<f64>, rel: f64) -> Result<(f64, f64)> {
        if level + 1 == self.n {
            prefix.push(mass);
            let g = self.slopes(prefix);
            prefix.pop();
            return self.radial(&g, sigma, cut, rel);
        }
        let breaks = self.kinks(level, prefix, mass);
        let mut failure: Option<Error> = None;
        let mut inner_err = 0.0f64;
        let inner_rel = rel * 0.1;
        let res = integrate_with_breaks(
            |w: f64| {
                if failure.is_some() {
                    return 0.0;
                }
                prefix.push(w);
                let v = self.level(level + 1, prefix, mass - w, sigma, cut, inner_rel);
                prefix.pop();
                match v {
                    Ok((v, e)) => {
                        inner_err = inner_err.max(e / v.abs().max(1e-300));
                        v
                    }
                    Err(e) => {
                        failure = Some(e);
                        0.0
                    }
                }
            },
            0.0,
            mass,
            &breaks,
            &QuadOptions::new(0.0, rel).with_max_intervals(4000),
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if !res.converged {
            return Err(Error::Quadrature(format!("simplex level {level} reached its panel budget")));
        }
        Ok((res.value, res.error + inner_err * res.value.abs()))
    }

    /// `Φ(P;σ;cut)` to relative tolerance `rel`.
    pub fn integrate(&self, sigma: f64, cut: Option<f64>, rel: f64) -> Result<Estimate> {
        let (v, e) = self.level(0, &mut Vec::with_capacity(self.n), 1.0, sigma, cut, rel)?;
        Ok(Estimate::new(v, e))
    }
}

/// Gaussian elimination with partial pivoting on an augmented square system.
fn solve_dense(mut m: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let k = m.len();
    for c in 0..k {
        let p = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        if m[p][c].abs() < 1e-12 {
            return None;
        }
        m.swap(p, c);
        for r in 0..k {
            if r != c {
                let f = m[r][c] / m[c][c];
                if f != 0.0 {
                    for j in c..=k {
                        m[r][j] -= f * m[c][j];
                    }
                }
            }
        }
    }
    Some((0..k).map(|r| m[r][k] / m[r][r]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn y(p: &str, s: f64) -> f64 {
        LogRadial::new(&parse(p).unwrap()).integrate(s, None, 1e-11).unwrap().value
    }

    #[test]
    fn closed_forms() {
        // ∫_1^∞ x^{−2} = 1
        assert!((y("x1", 2.0) - 1.0).abs() < 1e-12);
        // Y(x1 x2; s) = (s−1)^{−2}
        for s in [1.5, 2.0, 3.0] {
            assert!((y("x1 x2", s) - (s - 1.0).powi(-2)).abs() < 1e-9 * (s - 1.0).powi(-2));
        }
        // Y(x1 + x2; s) = 2^{2−s}/((s−1)(s−2))
        for s in [2.1, 3.0, 5.0] {
            let exact = 2f64.powf(2.0 - s) / ((s - 1.0) * (s - 2.0));
            let got = y("x1 + x2", s);
            assert!((got - exact).abs() < 1e-9 * exact, "s = {s}: {got} vs {exact}");
        }
        // Y(x1 x2 x3; s) = (s−1)^{−3}
        assert!((y("x1 x2 x3", 2.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn matches_tensor_quadrature() {
        // independent oracle: iterated 1-d quadrature on (0,1)^2 via x = 1/u
        use crate::numeric::quad::integrate as q;
        let s = 1.7;
        let p = parse("1 + x1^2 + x1 x2 + 2 x2^3").unwrap();
        let cp = p.compile();
        let o = QuadOptions::new(1e-13, 1e-11);
        let oracle = q(
            |u: f64| {
                q(|v: f64| {
                    let (x1, x2) = (1.0 / u, 1.0 / v);
                    cp.eval(&[x1, x2]).powf(-s) / (u * u * v * v)
                }, 0.0, 1.0, &o).value
            },
            0.0,
            1.0,
            &o,
        )
        .value;
        let got = LogRadial::new(&p).integrate(s, None, 1e-11).unwrap().value;
        assert!((got - oracle).abs() < 1e-8 * oracle, "{got} vs {oracle}");
    }

    #[test]
    fn cut_removes_the_inner_region() {
        // ∫_{x > T} x^{−s} dx = T^{1−s}/(s−1)
        let lr = LogRadial::new(&parse("x1").unwrap());
        let t: f64 = 50.0;
        let v = lr.integrate(2.5, Some(t.ln()), 1e-12).unwrap().value;
        assert!((v - t.powf(-1.5) / 1.5).abs() < 1e-12);
        // ∫∫_{xy > T} (xy)^{−s} = T^{1−s}(1 + (s−1) ln T)/(s−1)^2
        let lr = LogRadial::new(&parse("x1 x2").unwrap());
        let s: f64 = 2.5;
        let v = lr.integrate(s, Some(t.ln()), 1e-12).unwrap().value;
        let exact = t.powf(1.0 - s) * (1.0 + (s - 1.0) * t.ln()) / (s - 1.0).powi(2);
        assert!((v - exact).abs() < 1e-9 * exact, "{v} vs {exact}");
    }

    #[test]
    fn divergence_is_reported() {
        let lr = LogRadial::new(&parse("x1 + x2").unwrap());
        assert!(lr.integrate(1.9, None, 1e-8).is_err());
    }
}
