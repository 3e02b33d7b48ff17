use mzl_core::arith::{finite_type_descriptor, ArithmeticFunction, HOptions, PrimeSource};
use mzl_core::constants::{
    sargos_constant_direct, sargos_constant_elliptic, sargos_constant_limit, sigma0_rho0, LimitOptions,
};
use mzl_core::counting::{convergence_report, predict, CountOptions, Counter};
use mzl_core::dirichlet::{eval_y, pole_fit, PoleFitOptions, ZOptions, ZSeries};
use mzl_core::polyring::parse;
use mzl_core::rat;

fn func(k: &str, n: usize) -> ArithmeticFunction {
    ArithmeticFunction::builtin(ArithmeticFunction::parse_kind(k).unwrap(), n).unwrap()
}

fn hopts() -> HOptions {
    HOptions::new(1e-10, PrimeSource::new(None))
}

#[test]
fn pole_of_y_has_order_rho0() {
    for p in ["x1 + x2", "x1 x2", "x1^2 + x2^3", "x1 x2^2 + x2^3", "1 + x1^2 x2 + x1 x2^3", "x1^2 + x1 x2 + x2"] {
        let p = parse(p).unwrap();
        let (s0, r0) = sigma0_rho0(&p).unwrap();
        let fit = pole_fit(&mut |s| Ok(eval_y(&p, s, 1e-11)?.value), rat::to_f64(&s0), 4, &PoleFitOptions::default())
            .unwrap();
        assert_eq!(fit.order as usize, r0, "{p}");
        let a0 = sargos_constant_limit(&p, &LimitOptions::default()).unwrap().value;
        assert!((fit.leading - a0).abs() < 1e-4 * a0, "{p}: fit {} vs A0 {a0}", fit.leading);
    }
}

#[test]
fn pole_of_z_matches_the_predicted_leading_coefficient() {
    let cases = [
        ("unit", "x1 x2"),
        ("unit", "x1^2 + x2^2"),
        ("B2", "x1^2 + x2^2"),
        ("D2", "x1^2 + x2^2"),
        ("unit", "x1 + x2"),
        ("B2", "x1^2 + x1 x2 + x2^2"),
    ];
    for (k, p) in cases {
        let p = parse(p).unwrap();
        let f = func(k, 2);
        let pred = predict(&f, &p, &mut hopts(), &LimitOptions::default()).unwrap();
        let z = ZSeries::new(&f, &p, &ZOptions::default()).unwrap();
        let fit = pole_fit(&mut |s| Ok(z.eval(s)?.value), pred.iota_value, 4, &PoleFitOptions::default()).unwrap();
        assert_eq!(fit.order as usize, pred.rho, "{k} {p}");
        assert!((fit.leading - pred.leading).abs() < 0.02 * pred.leading, "{k} {p}: {} vs {}", fit.leading, pred.leading);
    }
}

#[test]
fn direct_formula_agrees_with_the_sphere_integral_in_three_variables() {
    for p in ["x1 + x2 + x3", "x1^2 + x2^2 + x3^2", "x1^2 + x2^2 + x3^2 + x1 x2"] {
        let p = parse(p).unwrap();
        let a = sargos_constant_direct(&p, 1e-10).unwrap().value;
        let b = sargos_constant_elliptic(&p, 1e-10).unwrap().value;
        assert!((a - b).abs() < 1e-6 * b, "{p}: {a} vs {b}");
    }
}

#[test]
fn counts_approach_the_main_term() {
    let cases = [("unit", "x1^2 + x2^2", 0.01), ("B2", "x1^2 + x2^2", 0.02), ("D3", "x1 + x2", 0.02)];
    for (k, p, tol) in cases {
        let p = parse(p).unwrap();
        let f = func(k, 2);
        let pred = predict(&f, &p, &mut hopts(), &LimitOptions::default()).unwrap();
        let counter = Counter::new(&f, &p, 800.0, CountOptions::default()).unwrap();
        let rep = convergence_report(&counter, &pred, &[100.0, 200.0, 400.0, 800.0], Some(tol)).unwrap();
        assert_eq!(rep.verdict, Some(true), "{k} {p}: {:?}", rep.ratios);
        let slope = rep.fitted_exponent.unwrap();
        assert!((slope - 2.0).abs() < 0.05, "{slope}");
    }
}

#[test]
fn descriptors_of_builtins() {
    let d = finite_type_descriptor(&func("D2", 3), &mut hopts()).unwrap();
    assert_eq!(d.iota, "3");
    assert_eq!(d.multiplicities, vec![1, 1, 1]);
    // componentwise cube-free: ζ(3)^{−n}
    let d = finite_type_descriptor(&func("B3", 2), &mut hopts()).unwrap();
    let z3 = mzl_core::numeric::special::zeta(3.0);
    assert!((d.h_at_zero - z3.powi(-2)).abs() < 1e-12);
}
