//! Generalized polynomials with positive coefficients and rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::sum::NeumaierSum;
use crate::rat::{self, Rat};

/// A point of `Q₊^n` used as a monomial exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<Rat>);

impl ExponentVector {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Invalid("exponent vector must have length ≥ 1".into()));
        }
        if coords.iter().any(Signed::is_negative) {
            return Err(Error::Invalid("exponents must be non-negative".into()));
        }
        Ok(Self(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|γ|`.
    pub fn degree(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    fn render_monomial(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| {
                if e.is_integer() && *e.numer() == 1.into() {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, rat::render(e))
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// `Σ b_k X^{γ^k}` with `b_k > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenPoly {
    n: usize,
    terms: BTreeMap<ExponentVector, f64>,
}

impl GenPoly {
    /// Builds a polynomial, merging like monomials. Every merged coefficient
    /// must be strictly positive.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, f64)>,
    {
        if n == 0 {
            return Err(Error::VariableMismatch("at least one variable required".into()));
        }
        let mut map: BTreeMap<ExponentVector, f64> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::VariableMismatch(format!(
                    "exponent of length {} in a polynomial of {n} variables",
                    e.len()
                )));
            }
            if !c.is_finite() {
                return Err(Error::Invalid(format!("coefficient {c} is not finite")));
            }
            *map.entry(e).or_insert(0.0) += c;
        }
        for (e, c) in &map {
            if *c <= 0.0 {
                return Err(Error::NonPositiveCoefficient {
                    coeff: *c,
                    monomial: e.render_monomial(),
                });
            }
        }
        if map.is_empty() {
            return Err(Error::Invalid("polynomial has no terms".into()));
        }
        Ok(Self { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, f64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Vec<Rat>> {
        self.terms.keys().map(|e| e.0.clone()).collect()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.terms.values().copied().collect()
    }

    pub fn degree(&self) -> Rat {
        self.terms.keys().map(ExponentVector::degree).max().unwrap_or_else(Rat::zero)
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<f64> {
        self.terms.get(e).copied()
    }

    /// True when every variable occurs with a positive exponent in some term.
    pub fn depends_on_all(&self) -> bool {
        (0..self.n).all(|i| self.terms.keys().any(|e| e.0[i].is_positive()))
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|e| e.degree() == d)
    }

    /// All exponents integral and all coefficients integral.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(e, c)| e.is_integral() && c.fract() == 0.0)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), c * lambda)))
    }

    /// The polynomial with a constant term `c` added (merged if present).
    pub fn plus_constant(&self, c: f64) -> Result<Self> {
        let zero = ExponentVector(vec![Rat::zero(); self.n]);
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(e, c)| (e.clone(), *c)).chain(std::iter::once((zero, c))),
        )
    }

    /// Terms whose exponent vectors satisfy `keep`.
    pub fn filter_terms<F: Fn(&ExponentVector) -> bool>(&self, keep: F) -> Option<Self> {
        let terms: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(e, _)| keep(e))
            .map(|(e, c)| (e.clone(), *c))
            .collect();
        (!terms.is_empty()).then_some(Self { n: self.n, terms })
    }

    /// Highest-degree homogeneous part `P_d`.
    pub fn homogeneous_part(&self) -> Self {
        let d = self.degree();
        self.filter_terms(|e| e.degree() == d).expect("nonempty polynomial")
    }

    /// Coefficient of the pure power `x_i^d` inside `P_d`, if present.
    pub fn pure_power_coefficient(&self, i: usize) -> Option<f64> {
        let d = self.degree();
        self.terms
            .iter()
            .find(|(e, _)| e.0[i] == d && e.0.iter().enumerate().all(|(j, x)| j == i || x.is_zero()))
            .map(|(_, c)| *c)
    }

    /// `P_d(x) > 0` on `R₊^n \ {0}`. With positive coefficients `P_d` vanishes
    /// somewhere off the origin exactly when it misses some pure power, because a
    /// monomial is nonzero at `e_i` only if it is a power of `x_i`.
    pub fn is_elliptic(&self) -> bool {
        (0..self.n).all(|i| self.pure_power_coefficient(i).is_some())
    }

    /// `Σ b_k Π x_i^{γ_i}` with compensated accumulation.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        if let Some(v) = x.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::Domain(format!("evaluation point coordinate {v} is not in [0, ∞)")));
        }
        let mut acc = NeumaierSum::default();
        for (e, c) in &self.terms {
            let mut term = *c;
            for (xi, ei) in x.iter().zip(&e.0) {
                if ei.is_zero() {
                    continue;
                }
                if ei.is_integer() {
                    term *= xi.powi(ei.to_i32().ok_or_else(|| Error::Domain("exponent too large".into()))?);
                } else if *xi == 0.0 {
                    return Err(Error::Domain(format!(
                        "zero coordinate under fractional exponent {}",
                        rat::render(ei)
                    )));
                } else {
                    term *= xi.powf(rat::to_f64(ei));
                }
            }
            acc.add(term);
        }
        Ok(acc.value())
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly::new(self)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { c: *c, e: e.0.iter().map(rat::render).collect() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let coords = t.e.iter().map(|s| rat::parse(s)).collect::<Result<Vec<_>>>()?;
                Ok((ExponentVector::new(coords)?, t.c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.n, terms)
    }

    /// Canonical term order: descending total degree, then descending exponents.
    fn canonical_order(&self) -> Vec<(&ExponentVector, f64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e, *c)).collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .canonical_order()
            .into_iter()
            .map(|(e, c)| {
                let mono = e.render_monomial();
                match (mono.is_empty(), c == 1.0) {
                    (true, _) => format!("{c}"),
                    (false, true) => mono,
                    (false, false) => format!("{c} {mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::str::FromStr for GenPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: f64,
    pub e: Vec<String>,
}

/// Canonical JSON form `{"n":N,"terms":[{"c":float,"e":["p/q",...]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

/// Parses `2 x1^3 x2 + x3^1/2`; the variable count is the largest index used.
pub fn parse(text: &str) -> Result<GenPoly> {
    parse_inner(text, None)
}

/// Parses with a declared variable count.
pub fn parse_with_arity(text: &str, n: usize) -> Result<GenPoly> {
    parse_inner(text, Some(n))
}

fn parse_inner(text: &str, arity: Option<usize>) -> Result<GenPoly> {
    let raw = Parser { src: text.as_bytes(), pos: 0 }.expr()?;
    let max_idx = raw.iter().flat_map(|(f, _)| f.iter().map(|(i, _)| *i)).max().unwrap_or(0);
    let n = match arity {
        Some(n) if max_idx > n => {
            return Err(Error::VariableMismatch(format!(
                "x{max_idx} used but only {n} variables declared"
            )))
        }
        Some(n) => n,
        None => max_idx,
    };
    if n == 0 {
        return Err(Error::VariableMismatch("no variables in expression".into()));
    }
    let mut terms = Vec::with_capacity(raw.len());
    for (factors, coeff) in raw {
        let mut coords = vec![Rat::zero(); n];
        for (i, e) in factors {
            coords[i - 1] += e;
        }
        terms.push((ExponentVector(coords), coeff));
    }
    let poly = GenPoly::from_terms(n, terms)?;
    if let Some(i) = (0..n).find(|&i| !poly.terms.keys().any(|e| e.0[i].is_positive())) {
        return Err(Error::VariableMismatch(format!("x{} does not occur", i + 1)));
    }
    Ok(poly)
}

type RawTerm = (Vec<(usize, Rat)>, f64);

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut sign = 1.0;
        match self.peek() {
            Some(b'-') => {
                sign = -1.0;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty expression"),
            _ => {}
        }
        loop {
            let (factors, c) = self.term()?;
            out.push((factors, sign * c));
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                Some(ch) => return self.err(format!("unexpected character {:?}", ch as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = None;
        if matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            coeff = Some(self.number()?);
        }
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return self.err("expected variable after '*'");
                    }
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.digits();
                    let idx: usize = match idx.parse() {
                        Ok(i) if i >= 1 => i,
                        _ => return self.err("expected variable index ≥ 1 after 'x'"),
                    };
                    let mut e = rat::int(1);
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.rational()?;
                    }
                    factors.push((idx, e));
                }
                _ => break,
            }
        }
        if coeff.is_none() && factors.is_empty() {
            return self.err("expected a coefficient or a variable");
        }
        Ok((factors, coeff.unwrap_or(1.0)))
    }

    fn rational(&mut self) -> Result<Rat> {
        if self.src.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            self.skip_ws();
            let r = self.rational()?;
            self.skip_ws();
            if self.src.get(self.pos) != Some(&b')') {
                return self.err("expected ')' after exponent");
            }
            self.pos += 1;
            return Ok(r);
        }
        let p = self.digits().to_string();
        if p.is_empty() {
            return self.err("expected exponent");
        }
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let q = self.digits().to_string();
            if q.is_empty() {
                return self.err("expected exponent denominator");
            }
            return rat::parse(&format!("{p}/{q}")).or_else(|_| self.err("bad rational exponent"));
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac = self.digits().to_string();
            return rat::parse(&format!("{p}.{frac}")).or_else(|_| self.err("bad decimal exponent"));
        }
        rat::parse(&p).or_else(|_| self.err("bad exponent"))
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        self.digits();
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            self.digits();
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits().is_empty() {
                return self.err("malformed exponent in coefficient");
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match s.parse::<f64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err(format!("malformed coefficient {s:?}"))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Power {
    Int(i32),
    Real(f64),
}

/// Flattened polynomial for hot evaluation loops (no domain checks).
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    n: usize,
    terms: Vec<(f64, Vec<(usize, Power)>)>,
    degree: f64,
}

impl CompiledPoly {
    fn new(p: &GenPoly) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                let factors = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| {
                        let pw = match (x.is_integer(), x.to_i32()) {
                            (true, Some(k)) => Power::Int(k),
                            _ => Power::Real(rat::to_f64(x)),
                        };
                        (i, pw)
                    })
                    .collect();
                (*c, factors)
            })
            .collect();
        Self { n: p.n, terms, degree: rat::to_f64(&p.degree()) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> f64 {
        self.degree
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for (c, fs) in &self.terms {
            let mut t = *c;
            for &(i, p) in fs {
                t *= match p {
                    Power::Int(k) => x[i].powi(k),
                    Power::Real(r) => x[i].powf(r),
                };
            }
            s += t;
        }
        s
    }
}
