//! The subcommands, each producing report entries.

use mzl_core::arith::{finite_type_descriptor, ArithmeticFunction, Kind};
use mzl_core::constants::{
    sargos_constant_direct, sargos_constant_elliptic, sargos_constant_limit, sigma0_rho0, sublevel_volume,
    volume_constant, ConstantEstimate, LimitOptions,
};
use mzl_core::counting::{convergence_report, iota_infimum, predict, CountOptions, Counter};
use mzl_core::dirichlet::{eval_y, pole_fit, PoleFitOptions, ZOptions, ZSeries};
use mzl_core::newton::PolyhedronAtInfinity;
use mzl_core::polyring::parse;
use mzl_core::rat::{self, Rat};
use mzl_core::GenPoly;
use serde_json::json;

use crate::report::Entry;
use crate::suites::{mellin_entry, run_suite, timed, Settings};
use crate::{Command, Method};

#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Core(mzl_core::Error),
}

impl From<mzl_core::Error> for CommandError {
    fn from(e: mzl_core::Error) -> Self {
        CommandError::Core(e)
    }
}

type Out = Result<Vec<Entry>, CommandError>;

pub fn execute(cmd: &Command, s: &Settings) -> Out {
    match cmd {
        Command::Analyze { poly } => analyze(poly),
        Command::Constant { poly, method, sargos_elliptic, direct, limit, samples, volume, mult, coef, expect, expect_rel } => {
            let method = if *sargos_elliptic {
                Method::Elliptic
            } else if *direct {
                Method::Direct
            } else if *limit {
                Method::Limit
            } else {
                *method
            };
            let entries = match (poly, volume) {
                (Some(p), None) => constant(&parse(p)?, method, *samples, s)?,
                (None, Some(i)) => {
                    vec![volume_entry(i, mult.as_deref().unwrap_or(""), coef.as_deref().unwrap_or(""), s)?]
                }
                _ => return Err(CommandError::Usage("give a polynomial or --volume with --mult and --coef".into())),
            };
            Ok(match expect {
                Some(x) => entries.into_iter().map(|e| e.within_rel(*x, *expect_rel)).collect(),
                None => entries,
            })
        }
        Command::Count { f, p, t, grid, predict, check, max_points } => {
            count(f, p, *t, grid, *predict, *check, *max_points, s)
        }
        Command::Euler { dk, bk, f, n } => {
            let kind = match (dk, bk, f) {
                (Some(k), None, None) => Kind::ProductKFree(*k),
                (None, Some(k), None) => Kind::ComponentwiseKFree(*k),
                (None, None, Some(name)) => ArithmeticFunction::parse_kind(name)?,
                _ => return Err(CommandError::Usage("give exactly one of --Dk, --Bk, --f".into())),
            };
            euler(kind, *n, s)
        }
        Command::Zeta { f, p, s: points, y, fit, q_max, max_points, cutoff } => {
            zeta(f, p, points, *y, *fit, *q_max, *max_points, *cutoff, s)
        }
        Command::VerifyMellin { w, rho, s: sv } => match sv {
            Some(x) => {
                let bound = if rho.len() == 1 { 1e-8 } else { 1e-6 };
                let rel = if rho.len() == 1 { 1e-12 } else { 1e-10 };
                if w.len() != rho.len() + 1 || !(1..=2).contains(&rho.len()) {
                    return Err(CommandError::Usage("need r = 1 or 2 values for --rho and r+1 weights for --w".into()));
                }
                Ok(vec![mellin_entry(w, rho, *x, rel, Some(bound))])
            }
            None => Ok(run_suite("mellin", s).expect("known suite")),
        },
        Command::Verify { suite } => run_suite(suite, s).ok_or_else(|| {
            CommandError::Usage(format!("unknown suite {suite:?}; known: {}, all", crate::suites::SUITES.join(", ")))
        }),
    }
}

fn analyze(text: &str) -> Out {
    let p = parse(text)?;
    const ANCHOR: &str = "sigma0 and rho0 from the face of the Newton polyhedron at infinity met by the diagonal";
    let summary = PolyhedronAtInfinity::new(&p.support())?.summary()?;
    let (sigma0, rho0) = sigma0_rho0(&p)?;
    let detail = json!({
        "polynomial": p.to_string(),
        "elliptic": p.is_elliptic(),
        "homogeneous": p.is_homogeneous(),
        "degree": rat::render(&p.degree()),
        "sigma0": rat::render(&sigma0),
        "rho0": rho0,
        "newton": summary,
    });
    Ok(vec![
        Entry::new("sigma0", ANCHOR)
            .value(rat::to_f64(&sigma0), None)
            .exact(rat::render(&sigma0))
            .method("exact rational linear algebra")
            .detail(detail),
        Entry::new("rho0", ANCHOR).value(rho0 as f64, None).exact(rho0.to_string()).method("codimension of the diagonal face"),
    ])
}

fn constant_entry(name: &str, anchor: &str, c: ConstantEstimate) -> Entry {
    Entry::new(name, anchor)
        .value(c.value, Some(c.error_estimate))
        .method(c.method)
        .detail(json!({ "sigma0": c.sigma0, "rho0": c.rho0 }))
}

fn constant(p: &GenPoly, method: Method, samples: u64, s: &Settings) -> Out {
    const LIMIT: &str = "A0 = lim (s - sigma0)^rho0 Y(P;s)";
    const SPHERE: &str = "elliptic A0 = (1/d) * integral of P_d^(-n/d) over the positive unit sphere";
    const DIRECT: &str = "A0 = n! Vol(Lambda) * integral of P_G0^(-sigma0) over the face directions";
    const VOLUME: &str = "n Vol{P_d <= 1} = d * A0 for elliptic P";
    let lopts = LimitOptions { rel: s.tol.min(1e-8), ..LimitOptions::default() };
    let mut out = Vec::new();
    let elliptic = p.is_elliptic();
    let want = |m: Method| method == m || method == Method::All;
    if want(Method::Elliptic) || (method == Method::Auto && elliptic) {
        out.push(constant_entry("A0 (sphere integral)", SPHERE, sargos_constant_elliptic(p, s.tol)?));
    }
    if want(Method::Limit) || (method == Method::Auto && !elliptic) {
        out.push(constant_entry("A0 (pole limit)", LIMIT, sargos_constant_limit(p, &lopts)?));
    }
    if method == Method::Direct || (method == Method::All && p.n() <= 3) {
        out.push(constant_entry("A0 (direct formula)", DIRECT, sargos_constant_direct(p, s.tol)?));
    }
    if method == Method::Sublevel || (method == Method::All && elliptic) {
        let v = sublevel_volume(&p.homogeneous_part(), samples, s.seed)?;
        let k = rat::to_f64(&p.degree()) / p.n() as f64;
        out.push(
            Entry::new("A0 (Monte Carlo sublevel volume)", VOLUME)
                .value(v.value / k, Some(v.error / k))
                .method(format!("{samples} ChaCha8 samples, seed {}", s.seed)),
        );
    }
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CommandError> {
    text.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CommandError::Usage(format!("bad {what} entry {x:?}"))))
        .collect()
}

fn volume_entry(rows: &str, mult: &str, coef: &str, s: &Settings) -> Result<Entry, CommandError> {
    let i: Vec<Vec<Rat>> = rows
        .split(';')
        .map(|row| row.split(',').map(|x| rat::parse(x.trim())).collect::<mzl_core::Result<Vec<Rat>>>())
        .collect::<mzl_core::Result<_>>()?;
    let u: Vec<u32> = parse_list(mult, "multiplicity")?;
    let b: Vec<f64> = parse_list(coef, "coefficient")?;
    let c = volume_constant(&i, &u, &b, &LimitOptions { rel: s.tol.min(1e-8), ..LimitOptions::default() })?;
    Ok(constant_entry("A0(I;u;b)", "volume constant of the generalized polynomial built by transposition", c))
}

#[allow(clippy::too_many_arguments)]
fn count(
    f: &str,
    p: &str,
    t: Option<f64>,
    grid: &[f64],
    with_prediction: bool,
    check: Option<f64>,
    max_points: u128,
    s: &Settings,
) -> Out {
    const ANCHOR: &str = "N(f;P;t) = sum of f(m) over P(m) <= t^d";
    let p = parse(p)?;
    let f = ArithmeticFunction::builtin(ArithmeticFunction::parse_kind(f)?, p.n())?;
    let ts: Vec<f64> = match (t, grid.is_empty()) {
        (Some(t), true) => vec![t],
        (None, false) => grid.to_vec(),
        _ => return Err(CommandError::Usage("give either --t or --grid".into())),
    };
    if ts.iter().any(|t| !(*t >= 1.0 && t.is_finite())) || ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CommandError::Usage("t values must be ≥ 1 and increasing".into()));
    }
    let t_max = *ts.last().expect("nonempty");
    let counter = Counter::new(&f, &p, t_max, CountOptions { max_points })?;
    if !with_prediction {
        return ts
            .iter()
            .map(|&t| {
                let name = format!("N({}; {p}; {t})", f.name());
                let c = counter.count(t)?;
                let mut e = Entry::new(&name, ANCHOR)
                    .value(c.value, Some(c.rounding_bound))
                    .method(format!("exact enumeration of {} lattice points", c.lattice_points));
                if let Some(x) = c.exact {
                    e = e.exact(x.to_string());
                }
                Ok(e)
            })
            .collect();
    }
    let pred = predict(&f, &p, &mut s.h_options(), &LimitOptions { rel: s.tol.min(1e-8), ..LimitOptions::default() })?;
    let rep = convergence_report(&counter, &pred, &ts, check)?;
    const MAIN: &str = "N(f;P;t) ~ C0 t^iota (log t)^(rho-1) with C0 = H d^rho A0(T_c;P) / (iota (rho-1)!)";
    let mut out = vec![Entry::new("C0", MAIN)
        .value(pred.c0, Some(pred.c0_error))
        .method(format!("A0 by {}", pred.a0.method))
        .detail(json!({
            "iota": pred.iota,
            "rho": pred.rho,
            "leading_coefficient_of_Z": pred.leading,
            "h_at_zero": pred.h_at_zero,
            "a0": pred.a0,
            "hypotheses": pred.hypotheses,
            "conditional_on": pred.conditional_on,
            "fitted_exponent": rep.fitted_exponent,
        }))];
    for (k, &t) in ts.iter().enumerate() {
        let c = &rep.counts[k];
        let name = format!("N({}; {p}; {t})", f.name());
        let mut e = Entry::new(&name, ANCHOR)
            .value(c.value, Some(c.rounding_bound))
            .method(format!("exact enumeration of {} lattice points", c.lattice_points))
            .detail(json!({ "main_term": rep.predictions[k], "ratio": rep.ratios[k] }));
        if let Some(x) = c.exact {
            e = e.exact(x.to_string());
        }
        if k + 1 == ts.len() {
            if let (Some(tol), Some(v)) = (check, rep.verdict) {
                e = e.verdict(Some(rep.predictions[k]), format!("|ratio - 1| <= {tol}"), v);
            }
        }
        out.push(e);
    }
    Ok(out)
}

fn euler(kind: Kind, n: usize, s: &Settings) -> Out {
    const ANCHOR: &str = "H_c(f;0): the Euler product left after removing the polar factors at c";
    let f = ArithmeticFunction::builtin(kind, n)?;
    let d = finite_type_descriptor(&f, &mut s.h_options())?;
    Ok(vec![Entry::new(format!("H_c({}; 0), n = {n}", f.name()), ANCHOR)
        .value(d.h_at_zero, Some(d.h_error))
        .method(d.h_method.clone())
        .detail(json!({
            "c": d.c,
            "iota": d.iota,
            "directions": d.directions,
            "multiplicities": d.multiplicities,
            "complete": d.complete,
            "conditional_on": d.conditional_on,
        }))])
}

#[allow(clippy::too_many_arguments)]
fn zeta(
    f: &str,
    p: &str,
    points: &[f64],
    y: bool,
    fit: bool,
    q_max: u32,
    max_points: u128,
    cutoff: Option<f64>,
    s: &Settings,
) -> Out {
    const Z: &str = "Z(f;P;s) = sum of f(m) P(m)^(-s/d)";
    const Y: &str = "Y(P;s) = integral of P^(-s) over [1,inf)^n";
    const POLE: &str = "first pole at the abscissa, of order rho with leading coefficient C";
    if points.is_empty() && !fit {
        return Err(CommandError::Usage("give --s values or --fit".into()));
    }
    let p = parse(p)?;
    let mut out = Vec::new();
    if y {
        for &x in points {
            let v = eval_y(&p, x, s.tol)?;
            out.push(Entry::new(format!("Y({p}; {x})"), Y).value(v.value, Some(v.error)).method("log-radial quadrature over the simplex"));
        }
        if fit {
            let (sigma0, rho0) = sigma0_rho0(&p)?;
            let a = rat::to_f64(&sigma0);
            let name = format!("pole of Y({p}) at {}", rat::render(&sigma0));
            out.push(timed(&name, POLE, || {
                let r = pole_fit(&mut |x| Ok(eval_y(&p, x, s.tol.min(1e-10))?.value), a, q_max, &PoleFitOptions::default())?;
                let a0 = sargos_constant_limit(&p, &LimitOptions::default())?;
                let ok = r.order as usize == rho0 && (r.leading - a0.value).abs() <= 0.01 * a0.value;
                Ok(Entry::new(&name, POLE)
                    .value(r.leading, Some(r.leading_error))
                    .method("Neville extrapolation of (s-a)^q Y(P;s)")
                    .detail(json!({ "order": r.order, "rho0": rho0, "residuals": r.residuals }))
                    .verdict(Some(a0.value), format!("order {rho0}, relative 1e-2"), ok))
            }));
        }
        return Ok(out);
    }
    let func = ArithmeticFunction::builtin(ArithmeticFunction::parse_kind(f)?, p.n())?;
    let zs = ZSeries::new(&func, &p, &ZOptions { max_points, cutoff, rel: s.tol })?;
    for &x in points {
        let v = zs.eval(x)?;
        out.push(
            Entry::new(format!("Z({}; {p}; {x})", func.name()), Z)
                .value(v.value, Some(v.tail_bound))
                .method(format!("exact sum over P(m) <= {}^d plus a mean-density tail integral", zs.cutoff()))
                .detail(json!({ "tail": v.tail, "mean_density": zs.kappa() })),
        );
    }
    if fit {
        let prediction = predict(&func, &p, &mut s.h_options(), &LimitOptions::default());
        let a = match &prediction {
            Ok(pr) => pr.iota_value,
            Err(_) => {
                let d = finite_type_descriptor(&func, &mut s.h_options())?;
                let i = iota_infimum(&d.support, &p)
                    .ok_or_else(|| CommandError::Usage("no abscissa: Σ_f misses the cone of supp P".into()))?;
                rat::to_f64(&i)
            }
        };
        let name = format!("pole of Z({}; {p}) at {a}", func.name());
        out.push(timed(&name, POLE, || {
            let r = pole_fit(&mut |x| Ok(zs.eval(x)?.value), a, q_max, &PoleFitOptions::default())?;
            let e = Entry::new(&name, POLE)
                .value(r.leading, Some(r.leading_error))
                .method("Neville extrapolation of (s-a)^q Z(f;P;s)")
                .detail(json!({ "order": r.order, "residuals": r.residuals, "growth": r.growth }));
            Ok(match &prediction {
                Ok(pr) => {
                    let ok = r.order as usize == pr.rho && (r.leading - pr.leading).abs() <= 0.02 * pr.leading.abs();
                    e.verdict(Some(pr.leading), format!("order {}, relative 2e-2", pr.rho), ok)
                }
                Err(_) => e,
            })
        }));
    }
    Ok(out)
}
