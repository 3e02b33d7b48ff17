//! Gamma and zeta functions.

use std::f64::consts::PI;

use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// `ln Γ(z)` up to a multiple of `2πi` (irrelevant once exponentiated).
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1−z) = π / sin(πz)
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_complex(1.0 - z);
    }
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// `ln sin(πz)` without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = e^{−iπz}(e^{2iπz} − 1)/(2i), and |e^{2iπz}| ≤ 1 here
    let i = Complex64::i();
    let e = (2.0 * i * PI * z).exp();
    -i * PI * z + (e - 1.0).ln() - (2.0 * i).ln()
}

pub fn gamma_complex(z: Complex64) -> Complex64 {
    ln_gamma_complex(z).exp()
}

pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_complex(Complex64::new(x, 0.0)).re
}

pub fn gamma(x: f64) -> f64 {
    let g = ln_gamma(x).exp();
    // Γ is negative on (−1, 0), (−3, −2), ...
    if x < 0.0 && (x.floor() as i64).rem_euclid(2) == 1 {
        -g
    } else {
        g
    }
}

// B_2, B_4, ..., B_20
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Riemann `ζ(s)` for real `s ≠ 1`, `s > −15`, by Euler–Maclaurin summation.
pub fn zeta(s: f64) -> f64 {
    assert!(s != 1.0, "zeta has a pole at s = 1");
    const N: usize = 12;
    let nf = N as f64;
    let mut head = super::sum::NeumaierSum::default();
    for k in 1..N {
        head.add((k as f64).powf(-s));
    }
    head.add(nf.powf(1.0 - s) / (s - 1.0));
    head.add(0.5 * nf.powf(-s));
    // term j: B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s; // s(s+1)...(s+2j-2)
    let mut fact = 2.0; // (2j)!
    let mut power = nf.powf(-s - 1.0);
    for (j, b) in BERNOULLI.iter().enumerate() {
        head.add(b / fact * rising * power);
        let j2 = 2.0 * (j as f64 + 1.0);
        rising *= (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        power /= nf * nf;
    }
    head.value()
}

/// Upper incomplete gamma `Γ(n, x)` for positive integer `n`.
pub fn upper_gamma_int(n: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..n {
        term *= x / k as f64;
        sum += term;
    }
    let fact: f64 = (1..n).map(f64::from).product();
    fact * (-x).exp() * sum
}
