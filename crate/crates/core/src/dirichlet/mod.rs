//! `Y(P;s)` and `Z(f;P;s)` on the real axis, pole fitting, and the Mellin
//! identity for `Γ(s)/(Σw)^s`.

pub mod logradial;
mod mellin;
mod polefit;

use serde::Serialize;

use crate::arith::ArithmeticFunction;
use crate::counting::{CountOptions, Counter, Region};
use crate::error::{Error, Result};
use crate::newton::PolyhedronAtInfinity;
use crate::numeric::sum::NeumaierSum;
use crate::numeric::Estimate;
use crate::polyring::GenPoly;
use crate::rat;
use logradial::LogRadial;

pub use mellin::{mellin_identity_check, MellinCheck};
pub use polefit::{pole_fit, PoleFit, PoleFitOptions};

/// `Y(P;s) = ∫_{[1,∞)^n} P^{−s}` for `s > σ0(P)`.
pub fn eval_y(p: &GenPoly, s: f64, rel: f64) -> Result<Estimate> {
    let sigma0 = PolyhedronAtInfinity::new(&p.support())?.diagonal_face()?.sigma0;
    if s <= rat::to_f64(&sigma0) {
        return Err(Error::Series(format!("Y(P;s) diverges for s = {s} ≤ σ0 = {}", rat::render(&sigma0))));
    }
    LogRadial::new(p).integrate(s, None, rel)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZOptions {
    /// cap on the lattice points summed exactly
    pub max_points: u128,
    /// height `T` of the exact region `P(m) ≤ T^d`; chosen from the budget when absent
    pub cutoff: Option<f64>,
    /// relative tolerance of the tail integrals
    pub rel: f64,
}

impl Default for ZOptions {
    fn default() -> Self {
        Self { max_points: 4_000_000, cutoff: None, rel: 1e-10 }
    }
}

/// `Z(f;P;s) = Σ f(m) P(m)^{−s/d}` as an exact sum over `P(m) ≤ T^d` plus
/// `κ̂·∫_{[1/2,∞)^n, P > T^d} P^{−s/d}`, where `κ̂` is the mean of `f` over the
/// exact region. The weighted points are kept, so evaluating many `s` is cheap.
#[derive(Debug, Clone)]
pub struct ZSeries {
    d: f64,
    cutoff: f64,
    points: Vec<(f64, f64)>,
    kappa: f64,
    mid: LogRadial,
    left: LogRadial,
    scale: f64,
    rel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZValue {
    pub value: f64,
    /// size of the replaced tail and the spread between two tail models
    pub tail: f64,
    pub tail_bound: f64,
}

impl ZSeries {
    pub fn new(f: &ArithmeticFunction, p: &GenPoly, opts: &ZOptions) -> Result<Self> {
        let n = p.n();
        let cutoff = match opts.cutoff {
            Some(t) => t,
            None => {
                let mut t = 2.0f64;
                while Region::new(p, 2.0 * t)?.points_up_to(opts.max_points) <= opts.max_points {
                    t *= 2.0;
                }
                t
            }
        };
        let counter = Counter::new(f, p, cutoff, CountOptions { max_points: opts.max_points })?;
        let points = counter.weighted_points(cutoff)?;
        let lattice = Region::new(p, cutoff)?.points_up_to(u128::MAX) as f64;
        let total: NeumaierSum = points.iter().map(|x| x.1).collect();
        let kappa = if lattice > 0.0 { total.value() / lattice } else { 1.0 };
        // P(y/2): each term scales by 2^{−|γ|}
        let half = GenPoly::from_terms(
            n,
            p.terms().map(|(e, b)| (e.clone(), b * 0.5f64.powf(rat::to_f64(&e.degree())))),
        )?;
        Ok(Self {
            d: rat::to_f64(&p.degree()),
            cutoff,
            points,
            kappa,
            mid: LogRadial::new(&half),
            left: LogRadial::new(p),
            scale: 0.5f64.powi(n as i32),
            rel: opts.rel,
        })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn eval(&self, s: f64) -> Result<ZValue> {
        let sigma = s / self.d;
        let mut head = NeumaierSum::default();
        for &(lp, w) in &self.points {
            head.add(w * (-sigma * lp).exp());
        }
        let cut = Some(self.d * self.cutoff.ln());
        let wrap = |e: Error| Error::Series(format!("tail integral at s = {s}: {e}"));
        let mid = self.mid.integrate(sigma, cut, self.rel).map_err(wrap)?;
        let left = self.left.integrate(sigma, cut, self.rel).map_err(wrap)?;
        let tail = self.kappa * self.scale * mid.value;
        let spread = (tail - self.kappa * left.value).abs();
        let quad = self.kappa * (self.scale * mid.error + left.error);
        Ok(ZValue { value: head.value() + tail, tail, tail_bound: spread + quad })
    }
}

/// One-shot `Z(f;P;s)`.
pub fn eval_z(f: &ArithmeticFunction, p: &GenPoly, s: f64, opts: &ZOptions) -> Result<ZValue> {
    ZSeries::new(f, p, opts)?.eval(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Kind;
    use crate::numeric::special::zeta;
    use crate::polyring::parse;
    use std::f64::consts::PI;

    fn unit(n: usize) -> ArithmeticFunction {
        ArithmeticFunction::builtin(Kind::Unit, n).unwrap()
    }

    #[test]
    fn y_examples() {
        let y = |p: &str, s: f64| eval_y(&parse(p).unwrap(), s, 1e-11).unwrap().value;
        assert!((y("x1 + x2", 3.0) - 0.25).abs() < 1e-10);
        assert!((y("x1", 2.0) - 1.0).abs() < 1e-12);
        assert!((y("x1 x2", 2.0) - 1.0).abs() < 1e-10);
        assert!(matches!(eval_y(&parse("x1 + x2").unwrap(), 2.0, 1e-8), Err(Error::Series(_))));
        // Y(λP;s) = λ^{−s} Y(P;s)
        let a = y("x1^2 + x1 x2 + x2^3", 2.5);
        let b = y("3 x1^2 + 3 x1 x2 + 3 x2^3", 2.5);
        assert!((b - 3f64.powf(-2.5) * a).abs() < 1e-9 * b);
    }

    #[test]
    fn z_zeta_identities() {
        let opts = ZOptions::default();
        let z = eval_z(&unit(2), &parse("x1 x2").unwrap(), 4.0, &opts).unwrap();
        let want = PI.powi(4) / 36.0;
        assert!((z.value - want).abs() < 1e-6 * want, "{z:?} vs {want}");
        let z = eval_z(&unit(1), &parse("x1").unwrap(), 2.0, &opts).unwrap();
        assert!((z.value - PI * PI / 6.0).abs() < 1e-8, "{z:?}");
        assert!((z.value - PI * PI / 6.0).abs() <= z.tail_bound + 1e-12);
        // monomial x1^2 x2^3 (d = 5): ζ(2s/5) ζ(3s/5)
        let s = 4.0;
        let z = eval_z(&unit(2), &parse("x1^2 x2^3").unwrap(), s, &opts).unwrap();
        let want = zeta(2.0 * s / 5.0) * zeta(3.0 * s / 5.0);
        assert!((z.value - want).abs() <= z.tail_bound, "{z:?} vs {want}");
        assert!((z.value - want).abs() < 1e-4 * want, "{z:?} vs {want}");
    }

    #[test]
    fn z_sum_of_squares_against_box_sum() {
        // Σ (m² + n²)^{−3}; outside the box [1,3000]² the terms sum to ~1e−14
        let mut oracle = NeumaierSum::default();
        for m in 1..=3000u64 {
            for n in 1..=3000u64 {
                oracle.add(((m * m + n * n) as f64).powi(-3));
            }
        }
        let z = eval_z(&unit(2), &parse("x1^2 + x2^2").unwrap(), 6.0, &ZOptions::default()).unwrap();
        assert!((z.value - oracle.value()).abs() < 1e-9, "{z:?} vs {}", oracle.value());
    }

    #[test]
    fn z_below_abscissa_fails() {
        let zs = ZSeries::new(&unit(2), &parse("x1 + x2").unwrap(), &ZOptions { cutoff: Some(50.0), ..Default::default() })
            .unwrap();
        assert!(zs.eval(1.9).is_err());
        assert!(zs.eval(2.2).is_ok());
    }
}
